"""Shared builders for the test suite."""

import numpy as np
import pytest

from mpcc_cert import AffineInstance, FirstOrderData


def bilinear_pair_data(grad_f):
    """n=2 instance with G(x) = x1, H(x) = x2 at the origin (biactive pair)."""
    return FirstOrderData(
        n=2, l=0, m=0, p=1,
        grad_f=grad_f,
        G_vals=[0.0], grad_G=[[1.0, 0.0]],
        H_vals=[0.0], grad_H=[[0.0, 1.0]],
    )


def bilinear_pair_instance(c):
    return AffineInstance(
        c=c,
        A_G=[[1.0, 0.0]], b_G=[0.0],
        A_H=[[0.0, 1.0]], b_H=[0.0],
    )


def m_not_s_instance():
    """Linear objective, linear constraints; unique minimizer at the origin is
    M- but not S-stationary (two active inequality rows pull the biactive
    multipliers apart)."""
    return AffineInstance(
        c=[1.0, 1.0, -1.0],
        A_g=[[-4.0, 0.0, 1.0], [0.0, -4.0, 1.0]], b_g=[0.0, 0.0],
        A_G=[[1.0, 0.0, 0.0]], b_G=[0.0],
        A_H=[[0.0, 1.0, 0.0]], b_H=[0.0],
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
