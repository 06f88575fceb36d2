"""Closed-form manufactured fields, generated by tools/gen_manufactured.py.

Do not edit by hand.
"""
import numpy as np


def ex1_u(x, y, z):
    """Example 1 field."""
    x0 = np.pi*x
    x1 = np.sin(x0)
    x2 = np.pi*z
    x3 = np.sin(x2)
    x4 = x3**2*np.cos(x2)
    x5 = np.pi*y
    x6 = np.sin(x5)
    x7 = x6**2*np.cos(x5)
    x8 = x1**2*np.cos(x0)
    return (x1**3*x4*x7, x4*x6**3*x8, -2*x3**3*x7*x8,)


def ex1_curl(x, y, z):
    """Curl of the Example 1 field."""
    x0 = np.pi*x
    x1 = np.sin(x0)
    x2 = x1**2
    x3 = np.pi*y
    x4 = np.sin(x3)
    x5 = x4**2
    x6 = np.pi*z
    x7 = np.sin(x6)
    x8 = x7**2
    x9 = np.cos(x6)
    x10 = 2*x9**2
    x11 = np.cos(x3)
    x12 = x11**2
    x13 = 4*x8
    x14 = np.cos(x0)
    x15 = np.pi*x7
    x16 = x14**2
    return (x14*x15*x2*x4*(-x10*x5 - x12*x13 + 3*x5*x8), x1*x11*x15*x5*(x10*x2 + x13*x16 - 3*x2*x8), 2*np.pi*x1*x4*x8*x9*(-x12*x2 + x16*x5),)


def ex1_grad_curl(x, y, z):
    """Row-major d_j (curl u)_i."""
    x0 = np.pi*y
    x1 = np.sin(x0)
    x2 = x1**2
    x3 = np.pi*z
    x4 = np.sin(x3)
    x5 = x4**2
    x6 = np.pi*x
    x7 = np.cos(x6)
    x8 = x7**2
    x9 = np.sin(x6)
    x10 = x9**2
    x11 = np.cos(x0)
    x12 = x11**2
    x13 = x2*x8
    x14 = np.cos(x3)
    x15 = x14**2
    x16 = 4*x15
    x17 = x15*x2
    x18 = 2*x17
    x19 = x12*x5
    x20 = -x10*x18 + 3*x10*x2*x5 + 8*x19*x8
    x21 = np.pi**2
    x22 = x21*x4
    x23 = x1*x22*x9
    x24 = x10*x7
    x25 = x11*x22
    x26 = x14*x21
    x27 = x1*x26
    x28 = x10*x5
    x29 = x10*x15
    x30 = x5*x8
    x31 = x10*x12
    x32 = x31*x5
    x33 = x13*x5
    x34 = x11*x26*x9
    x35 = 2*x10*x2
    x36 = 2*x5
    x37 = 2*x15
    return (x23*(4*x10*x12*x5 - x13*x16 + 6*x2*x5*x8 - x20), x24*x25*(-6*x17 - 4*x19 + 17*x2*x5), x24*x27*(-x18 - 12*x19 + 13*x2*x5), x2*x25*x7*(-17*x28 + 6*x29 + 4*x30), x23*(x16*x31 + x20 - 6*x32 - 4*x33), x2*x34*(-13*x28 + 2*x29 + 12*x30), x27*x36*x7*(x2*x8 - 3*x31 - x35), x34*x36*(3*x13 - x31 + x35), 2*x23*(x13*x37 - x31*x37 + x32 - x33),)


def ex1_curlcurl(x, y, z):
    """curl curl u."""
    x0 = np.pi*x
    x1 = np.sin(x0)
    x2 = x1**2
    x3 = 2*x2
    x4 = np.pi*z
    x5 = np.sin(x4)
    x6 = x5**2
    x7 = np.pi*y
    x8 = np.cos(x7)
    x9 = x6*x8**2
    x10 = x3*x9
    x11 = np.cos(x0)
    x12 = np.sin(x7)
    x13 = x12**2
    x14 = x13*x6
    x15 = x11**2*x14
    x16 = -17*x14*x2
    x17 = np.cos(x4)
    x18 = x13*x17**2
    x19 = x16 + x18*x3
    x20 = np.pi**2
    x21 = x17*x20
    x22 = 2*x15
    x23 = 6*x2
    return (x1*x21*x8*(-x10 - 6*x15 - x19), x11*x12*x21*(-x19 - x22 - x23*x9), 2*x11*x20*x5*x8*(x10 + x16 + x18*x23 + x22),)


def ex1_curl_lap_curl(x, y, z):
    """-curl(Laplace(curl u))."""
    x0 = np.pi*y
    x1 = np.sin(x0)
    x2 = x1**2
    x3 = np.pi*x
    x4 = np.cos(x3)
    x5 = x4**2
    x6 = x2*x5
    x7 = np.sin(x3)
    x8 = x7**2
    x9 = np.cos(x0)
    x10 = x9**2
    x11 = x10*x8
    x12 = x10*x5
    x13 = x2*x8
    x14 = -6*x12 + 2*x13
    x15 = np.pi*z
    x16 = np.sin(x15)
    x17 = x16**2
    x18 = 2*x17
    x19 = x18*(3*x11 + x14 - 7*x6)
    x20 = 8*x12 + 35*x13
    x21 = x18*(-7*x11 + x14 + 3*x6)
    x22 = 7*x17
    x23 = np.cos(x15)
    x24 = x23**2
    x25 = 2*x24
    x26 = x17*x8
    x27 = x10*x26
    x28 = x17*x5
    x29 = 14*x28
    x30 = 4*x5
    x31 = x2*x24
    x32 = x30*x31
    x33 = x24*x8
    x34 = 8*x10
    x35 = x17*x2
    x36 = x24*x5
    x37 = x2*(13*x26 - 12*x28 - 32*x33 + 24*x36) + x2*(17*x26 - 46*x28 - 6*x33 + 12*x36)
    x38 = 14*x33
    x39 = x2*x26
    x40 = -x2*x38 + x28*x34 + 21*x39
    x41 = np.pi**4
    x42 = x23*x41
    x43 = x2*x28
    x44 = 4*x10
    x45 = x33*x44
    x46 = x10*x17
    x47 = x10*x24
    x48 = x8*(-32*x31 + 13*x35 - 12*x46 + 24*x47) + x8*(-6*x31 + 17*x35 - 46*x46 + 12*x47)
    return (x42*x7*x9*(x18*x2*(-58*x5 + 23*x8) + x18*(-10*x11 + x20 - 28*x6) - x19 - x2*x29 + 4*x2*(x22*x5 + x22*x8 - x25*x5 - x25*x8) + x21 - 20*x27 - x32 + x33*x34 + 18*x35*(-x30 + 5*x8) + 40*x35*(x5 + x8) + x37 + x40), x1*x4*x42*(x18*(-28*x11 + x20 - 10*x6) + x19 + 8*x2*x36 - x21 + 2*x26*(-58*x10 + 23*x2) + 40*x26*(x10 + x2) + 18*x26*(5*x2 - x44) - 14*x27 + x40 - 20*x43 - x45 + x48 + 4*x8*(x10*x22 - x10*x25 + x2*x22 - x2*x25)), -x16*x4*x41*x9*(16*x10*x28 + 4*x13*(25*x17 - 56*x24) + 36*x13*(x22 - x25) - 28*x2*x33 + 2*x2*(x24*x30 + 49*x26 - x29 - x38) - 34*x27 + x32 + x37 + 42*x39 - 34*x43 + x45 + x48 + 2*x8*(x24*x44 - 14*x31 + 49*x35 - 14*x46)),)


def ex2_u(x, y, z):
    """Example 2 reduced-problem field."""
    x0 = y - 1
    x1 = z - 1
    x2 = (1/8)*x**2*(x - 1)**3
    return (0.0 + 0.0 * x, -x0**3*x1**2*x2*y**2*z*(5*z - 2), x0**2*x1**3*x2*y*z**2*(5*y - 2),)


def ex2_curl(x, y, z):
    """Curl of the Example 2 field."""
    x0 = y - 1
    x1 = z - 1
    x2 = x - 1
    x3 = y**2
    x4 = x0**2
    x5 = x3*x4
    x6 = z**2
    x7 = 3*x6
    x8 = x1**2
    x9 = x3*x8
    x10 = x4*x8
    x11 = x6*y
    x12 = 9*x
    x13 = 6*x
    x14 = 6*x2
    x15 = 4*x2
    x16 = (1/8)*x*x2**2
    return ((1/4)*x**2*x0*x1*x2**3*(6*x0*x11*x8 + 6*x1*x5*z + x10*x3 + x10*x6 + x5*x7 + x7*x9), -x1**3*x11*x16*x4*(x0*x13 + x0*x15 + x12*y + x14*y), -x0**3*x16*x9*z*(x1*x13 + x1*x15 + x12*z + x14*z),)


def ex2_grad_curl(x, y, z):
    """Row-major d_j (curl u)_i."""
    x0 = x - 1
    x1 = x0**2
    x2 = y - 1
    x3 = x2**2
    x4 = z**2
    x5 = y**2
    x6 = (9/4)*x
    x7 = x5*x6
    x8 = x4*x7
    x9 = z - 1
    x10 = x9**2
    x11 = (9/2)*x
    x12 = x2*y
    x13 = x11*x12
    x14 = x10*x4
    x15 = x11*z
    x16 = x15*x9
    x17 = x3*x5
    x18 = (3/4)*x
    x19 = x18*x3
    x20 = x10*x19
    x21 = (3/2)*x0
    x22 = x21*x5
    x23 = x22*x4
    x24 = x0*x2
    x25 = 3*x24
    x26 = x25*y
    x27 = 3*x0
    x28 = x9*z
    x29 = x27*x28
    x30 = (1/2)*x0
    x31 = x3*x30
    x32 = x10*x31
    x33 = x*x9
    x34 = x2*x33
    x35 = x2**3
    x36 = x35*y
    x37 = x4*x5
    x38 = (3/4)*x10
    x39 = x3*x38
    x40 = (9/4)*x3
    x41 = x10*x40
    x42 = (9/2)*x12*x14 + (9/2)*x17*x28
    x43 = x**2
    x44 = x0**3*x43
    x45 = x9**3
    x46 = x45*z
    x47 = (9/4)*x43
    x48 = x0*y
    x49 = (3/2)*x43
    x50 = (3/4)*x1
    x51 = (1/2)*x1
    x52 = x4*x45
    x53 = x*y*z
    x54 = x9*y
    x55 = x2*z
    x56 = -x1*x10*x3*x53*(x21*x54 + x21*x55 + x24*x9 + (3/2)*x34 + (9/4)*x48*z + (27/8)*x53 + x54*x6 + x55*x6)
    x57 = x35*x5
    return (x1*x34*(x10*x23 + x10*x8 + x13*x14 + x14*x26 + x16*x17 + x17*x29 + x20*x4 + x20*x5 + x23*x3 + x3*x8 + x32*x4 + x32*x5), x44*x9*((1/2)*x10*x36 + 3*x28*x36 + (3/2)*x36*x4 + x37*x38 + x37*x40 + x39*x5 + x4*x41 + x42), x2*x44*((9/4)*x10*x37 + 3*x12*x46 + (3/4)*x3*x37 + (1/2)*x3*x46 + x39*x4 + x41*x5 + x42 + (3/2)*x46*x5), -x3*x48*x52*(x*x25 + x11*x48 + x2*x49 + x2*x51 + x47*y + x50*y), -x*x1*x2*x52*(x13 + x19 + x22 + x26 + x31 + x7), x56, -x0*x10*x57*z*(x0*x15 + x27*x33 + x47*z + x49*x9 + x50*z + x51*x9), x56, -x1*x33*x57*(x10*x18 + x10*x30 + x16 + x21*x4 + x29 + x4*x6),)


def ex2_curlcurl(x, y, z):
    """curl curl u (the Example 2 source)."""
    x0 = x - 1
    x1 = y - 1
    x2 = x**2
    x3 = x0**2
    x4 = x1**2
    x5 = x3*x4
    x6 = x2*x5
    x7 = z - 1
    x8 = x7**3*z
    x9 = (1/2)*x8
    x10 = y**2
    x11 = x10*x5
    x12 = x10*x2
    x13 = x12*x3
    x14 = (3/2)*x8
    x15 = x12*x4
    x16 = z**2
    x17 = (3/4)*x16
    x18 = x10*x6
    x19 = x7**2
    x20 = x17*x19
    x21 = (9/4)*x19
    x22 = x16*x21
    x23 = 3*x8
    x24 = x*x0
    x25 = x10*x24*x4
    x26 = x2*x3*y
    x27 = (9/2)*x19
    x28 = x16*x26
    x29 = x7*z
    x30 = x1*x27*x28 + x11*x20 + x15*x22 + x16*x25*x27 + (9/2)*x18*x29
    x31 = x1**3
    x32 = x19*x31
    x33 = (1/2)*x32
    x34 = x16*y
    x35 = x32*x34
    return (0.0 + 0.0 * x, x0*x1*(x1*x23*x26 + x11*x9 + x13*x14 + x13*x22 + x14*x15 + x17*x18 + x18*x21 + x20*x6 + x23*x25 + x30 + x6*x9), -x0*x7*(x13*x20 + (9/4)*x16*x18 + (3/4)*x18*x19 + (3/2)*x2*x35 + x22*x6 + 3*x24*x35 + 3*x26*x29*x31 + x26*x33 + (3/2)*x28*x31 + x3*x33*x34 + x30),)
