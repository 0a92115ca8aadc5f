"""
Straight-line scalar reference for the metric

Loop-per-pixel re-implementation over plain Python lists, sharing no code
with the package. Tests compare the vectorized library against it.
"""
import math

ALPHA = 0.6
C1 = 140.0
C2 = 55.0
C3 = 550.0
RHO = 1.0
Q = 0.25
O = 0.25


def to_lists(array):
    """(h, w, 3) array-like to nested lists of floats"""
    return [[[float(v) for v in px] for px in row] for row in array]


def factor(h, w):
    m = math.floor(min(h, w) / 256.0 + 0.5)
    return m if m >= 1 else 1


def box_downsample(img, m):
    h, w = len(img), len(img[0])
    if m == 1:
        return [[list(px) for px in row] for row in img]
    lo = (m - 1) // 2
    out = []
    for r in range(0, h, m):
        row = []
        for c in range(0, w, m):
            px = []
            for ch in range(3):
                total = 0.0
                for i in range(r - lo, r - lo + m):
                    for j in range(c - lo, c - lo + m):
                        if 0 <= i < h and 0 <= j < w:
                            total += img[i][j][ch]
                px.append(total / (m * m))
            row.append(px)
        out.append(row)
    return out


def lhm(px):
    r, g, b = px
    return (
        0.2989 * r + 0.5870 * g + 0.1140 * b,
        0.30 * r + 0.04 * g - 0.35 * b,
        0.34 * r - 0.6 * g + 0.17 * b,
    )


def convolve3(plane, kernel):
    """True 3x3 convolution, zero padding, same size"""
    h, w = len(plane), len(plane[0])
    out = [[0.0] * w for _ in range(h)]
    for i in range(h):
        for j in range(w):
            total = 0.0
            for u in range(-1, 2):
                for v in range(-1, 2):
                    y, x = i - u, j - v
                    if 0 <= y < h and 0 <= x < w:
                        total += kernel[u + 1][v + 1] * plane[y][x]
            out[i][j] = total
    return out


PREWITT_X = [[1 / 3, 0.0, -1 / 3]] * 3
PREWITT_Y = [[1 / 3] * 3, [0.0] * 3, [-1 / 3] * 3]


def prewitt(plane):
    gx = convolve3(plane, PREWITT_X)
    gy = convolve3(plane, PREWITT_Y)
    return [
        [math.sqrt(gx[i][j] ** 2 + gy[i][j] ** 2) for j in range(len(plane[0]))]
        for i in range(len(plane))
    ]


def gs(a, b, c):
    return (2 * a * b + c) / (a * a + b * b + c)


def cs_hat(hr, hd, mr, md, c):
    return (2 * (hr * hd + mr * md) + c) / (hr * hr + hd * hd + mr * mr + md * md + c)


def cs_two_factor(hr, hd, mr, md, c):
    return gs(hr, hd, c) * gs(mr, md, c)


def signed_pow(x, q):
    if x >= 0:
        return x ** q
    return abs(x) ** q * math.cos(q * math.pi)


def deviation_pool(values, rho=RHO, q=Q, o=O):
    ys = [signed_pow(v, q) for v in values]
    mean = 0.0
    for y in ys:
        mean += y
    mean /= len(ys)
    total = 0.0
    for y in ys:
        total += abs(y - mean) ** rho
    return (total / len(ys)) ** (o / rho)


def similarity_values(ref, dist, fused=True, alpha=ALPHA, c1=C1, c2=C2, c3=C3):
    """Final combined map as a flat list"""
    ref, dist = to_lists(ref), to_lists(dist)
    m = factor(len(ref), len(ref[0]))
    ref, dist = box_downsample(ref, m), box_downsample(dist, m)
    h, w = len(ref), len(ref[0])

    ch_r = [[lhm(px) for px in row] for row in ref]
    ch_d = [[lhm(px) for px in row] for row in dist]
    lr = [[ch_r[i][j][0] for j in range(w)] for i in range(h)]
    ld = [[ch_d[i][j][0] for j in range(w)] for i in range(h)]
    lf = [[(lr[i][j] + ld[i][j]) / 2 for j in range(w)] for i in range(h)]
    gr, gd, gf = prewitt(lr), prewitt(ld), prewitt(lf)

    values = []
    for i in range(h):
        for j in range(w):
            g = gs(gr[i][j], gd[i][j], c1)
            if fused:
                g += gs(gd[i][j], gf[i][j], c2) - gs(gr[i][j], gf[i][j], c2)
            c = cs_hat(ch_r[i][j][1], ch_d[i][j][1], ch_r[i][j][2], ch_d[i][j][2], c3)
            values.append(alpha * g + (1 - alpha) * c)
    return values


def mdsi(ref, dist, fused=True):
    """Default-parameter score of one pair"""
    return deviation_pool(similarity_values(ref, dist, fused=fused))
