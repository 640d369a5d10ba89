"""Exact arithmetic for the module of reals whose multiples by Pisot powers converge to integers."""
