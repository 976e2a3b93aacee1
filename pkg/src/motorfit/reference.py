"""Published data for the 2.2 kW, 208 V, 60 Hz double-cage test motor.

``PUBLISHED_PARAMS`` holds the estimates reported for four methods (``pamp``
is the MATLAB ``power_AsynchronousMachineParams`` tool); ``PUBLISHED_QUANTITIES``
the model quantities reported for each of them.  Both are reference data for
tests and reports, not inputs to the estimator.
"""

from .motor_model import CircuitParams, Nameplate

TEST_MOTOR = Nameplate(
    t_start=43.31,
    t_full_load=12.27,
    t_max=47.73,
    i_start=66.48,
    i_full_load=8.3,
    pf_full_load=0.87,
    s_full_load=0.039,
    v_line=208.0,
    freq=60.0,
    p_rated=2200.0,
    pole_pairs=2,
)

# Column rows there are R_1 (stator), X_sd, X_m, X_1d, R_1d, X_2d, R_2d.
PUBLISHED_PARAMS = {
    "abc": CircuitParams(r_s=1.1855, x_sd=0.1259, x_m=25.077, r_1=1.1648, x_1d=0.1299, r_2=1.3641, x_2d=0.1187),
    "pso": CircuitParams(r_s=1.1855, x_sd=0.1146, x_m=23.572, r_1=1.1852, x_1d=0.1154, r_2=1.4287, x_2d=0.1145),
    "ga": CircuitParams(r_s=0.919, x_sd=0.6973, x_m=23.7683, r_1=1.0485, x_1d=0.6543, r_2=1.6471, x_2d=0.3057),
    "pamp": CircuitParams(r_s=1.183, x_sd=0.1257, x_m=25.4211, r_1=1.253, x_1d=0.1573, r_2=1.257, x_2d=0.1257),
}

PUBLISHED_QUANTITIES = {
    "pamp": {"T_st": 43.57, "T_fl": 12.57, "T_Max": 48.33, "I_st": 65.8839, "I_fl": 8.2933, "PF_fl": 0.8747},
    "abc": {"T_st": 43.5, "T_fl": 12.55, "T_Max": 48.68, "I_st": 65.8059, "I_fl": 8.3196, "PF_fl": 0.8716},
    "pso": {"T_st": 43.98, "T_fl": 12.22, "T_Max": 50.32, "I_st": 65.1745, "I_fl": 8.3182, "PF_fl": 0.8508},
    "ga": {"T_st": 44.8588, "T_fl": 13.2721, "T_Max": 51.870, "I_st": 64.2793, "I_fl": 8.6064, "PF_fl": 0.8729},
}

PUBLISHED_ERRORS_PCT = {
    "pamp": {"T_st": 0.60, "T_fl": 2.44, "T_Max": 1.26, "I_st": 0.902, "I_fl": 0.12, "PF_fl": 0.57},
    "abc": {"T_st": 0.44, "T_fl": 2.28, "T_Max": 1.99, "I_st": 1.01, "I_fl": 0.23, "PF_fl": 0.18},
    "pso": {"T_st": 1.55, "T_fl": 0.40, "T_Max": 3.44, "I_st": 1.96, "I_fl": 0.21, "PF_fl": 2.24},
    "ga": {"T_st": 3.58, "T_fl": 8.14, "T_Max": 8.67, "I_st": 3.31, "I_fl": 3.69, "PF_fl": 0.33},
}
