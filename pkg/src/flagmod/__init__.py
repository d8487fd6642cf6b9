"""Weyl group combinatorics, Kazhdan-Lusztig elements and flag permutation
modules of SL_n(F_q), for experiments on the modules generated by
alternating sums over parabolic subgroups."""

__version__ = "0.1.0"
