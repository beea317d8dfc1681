"""Reference values for the exponent tables and subset experiments, keyed by n."""

MAXS = {
    1: 1, 2: 1, 3: 3, 4: 7, 5: 25, 6: 90, 7: 350, 8: 1701, 9: 7770, 10: 42525,
    11: 246730, 12: 1379400, 13: 9321312, 14: 63436373, 15: 420693273,
    16: 3281882604, 17: 25708104786, 18: 1974624834000, 19: 1709751003480,
    20: 15170932662679,
}
M = {
    5: 1, 6: 1, 7: 3, 8: 3, 9: 21, 10: 21, 11: 175, 12: 175, 13: 2250, 14: 2250,
    15: 31500, 16: 31500, 17: 595350, 18: 595350, 19: 13216770, 20: 13216770,
    21: 330419250, 22: 330419250, 23: 10492193250, 24: 10492193250,
}
MHAT = {
    7: 1, 8: 1, 9: 1, 10: 1, 11: 2, 12: 2, 13: 2, 14: 2, 15: 9, 16: 9, 17: 9,
    18: 9, 19: 49, 20: 49, 21: 49, 22: 49, 23: 625, 24: 625, 25: 625, 26: 625,
    27: 8100, 28: 8100, 29: 8100, 30: 8100, 31: 122500, 32: 122500, 33: 122500,
    34: 122500, 35: 2893401, 36: 2893401, 37: 2893401,
}
# three significant digits as printed
M_SCI = {
    25: "3.40e11", 26: "3.40e11", 27: "1.29e13", 28: "1.29e13", 29: "5.91e14",
    30: "5.91e14", 31: "2.67e16", 32: "2.67e16", 33: "1.38e18", 34: "1.38e18",
    35: "8.44e19", 36: "8.44e19", 37: "5.08e21",
    97: "1.08e87", 98: "1.08e87", 99: "3.09e89", 100: "3.09e89", 2020: "5.52e3893",
}
MAXS_SCI = {97: "3.22e110", 98: "9.31e111", 99: "2.69e113", 100: "7.77e114", 2020: "3.81e4398"}
MHAT_SCI = {97: "1.52e32", 98: "1.52e32", 99: "1.45e34", 100: "1.45e34", 2020: "3.97e1700"}

# random-subset experiments: (n, subset size, samples) -> reference fraction
EXPERIMENTS = {
    (4, 8, 100000): 0.8978,
    (5, 8, 10000): 0.7690,
    (6, 8, 10000): 0.7913,
    (5, 5, 10000): 0.1430,
}
