# Copyright 2026 The sfgnet Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Straight-line numpy versions of the four COD metrics.

Run once to regenerate the golden values frozen in
tests/metrics/metrics_golden_test.cpp. Kept deliberately naive: explicit
loops, no shared code with the C++ library.
"""

import math

import numpy as np

EPS = np.finfo(np.float64).eps
N = 16


def fixture(kind):
    """16x16 (pred, gt) pairs defined by closed-form expressions."""
    y, x = np.mgrid[0:N, 0:N].astype(np.float64)
    if kind == "ellipse":
        gt = (((y - 7.0) / 5.0) ** 2 + ((x - 9.0) / 4.0) ** 2 <= 1.0)
        pred = 0.5 + 0.45 * np.sin(0.7 * x + 0.3) * np.cos(0.5 * y - 0.2)
        pred = np.where(gt, np.clip(pred + 0.3, 0, 1), np.clip(pred - 0.3, 0, 1))
    elif kind == "offset_square":
        gt = (y >= 3) & (y < 11) & (x >= 2) & (x < 9)
        pred = np.zeros((N, N))
        pred[5:13, 4:11] = 0.8
        pred += 0.1 * ((x + 2 * y) % 3) / 2.0
    elif kind == "ring":
        r = np.sqrt((y - 8.0) ** 2 + (x - 7.5) ** 2)
        gt = (r >= 3.0) & (r < 6.0)
        pred = np.exp(-((r - 4.5) ** 2) / 4.0)
    else:
        raise ValueError(kind)
    return pred.astype(np.float64), gt.astype(bool)


def mae(pred, gt):
    return float(np.mean(np.abs(pred - gt.astype(np.float64))))


# ---- S-measure ----

def s_object(vals):
    m = vals.mean()
    sd = vals.std(ddof=1)
    return 2.0 * m / (m * m + 1.0 + sd + EPS)


def ssim_block(p, g):
    n = p.size
    mx, my = p.mean(), g.mean()
    sx = ((p - mx) ** 2).sum() / (n - 1)
    sy = ((g - my) ** 2).sum() / (n - 1)
    sxy = ((p - mx) * (g - my)).sum() / (n - 1)
    a = 4.0 * mx * my * sxy
    b = (mx * mx + my * my) * (sx + sy)
    if a != 0:
        return a / (b + EPS)
    if b == 0:
        return 1.0
    return 0.0


def s_measure(pred, gt):
    g = gt.astype(np.float64)
    u = g.mean()
    if u == 0:
        return 1.0 - pred.mean()
    if u == 1:
        return pred.mean()
    fg = (pred * g)[gt]
    bg = ((1.0 - pred) * (1.0 - g))[~gt]
    obj = u * s_object(fg) + (1.0 - u) * s_object(bg)

    rows, cols = np.nonzero(gt)
    cy = int(np.round(rows.mean())) + 1
    cx = int(np.round(cols.mean())) + 1
    h, w = gt.shape
    area = h * w
    blocks = [
        (slice(0, cy), slice(0, cx), cx * cy / area),
        (slice(0, cy), slice(cx, w), cy * (w - cx) / area),
        (slice(cy, h), slice(0, cx), (h - cy) * cx / area),
    ]
    w4 = 1.0 - sum(b[2] for b in blocks)
    blocks.append((slice(cy, h), slice(cx, w), w4))
    region = 0.0
    for ys, xs, wt in blocks:
        region += wt * ssim_block(pred[ys, xs], g[ys, xs])
    return max(0.0, 0.5 * obj + 0.5 * region)


# ---- E-measure (mean over 256 thresholds, normalized by pixel count) ----

def e_measure(pred, gt):
    g = gt.astype(np.float64)
    n = g.size
    scores = []
    for k in range(256):
        fm = (pred > k / 256.0).astype(np.float64)
        if g.sum() == 0:
            enh = 1.0 - fm
        elif (1.0 - g).sum() == 0:
            enh = fm
        else:
            af = fm - fm.mean()
            ag = g - g.mean()
            align = 2.0 * ag * af / (ag * ag + af * af + EPS)
            enh = (align + 1.0) ** 2 / 4.0
        scores.append(enh.sum() / n)
    return float(np.mean(scores))


# ---- weighted F-measure ----

def nearest_foreground(gt):
    """Brute force: distance and coordinates of the nearest foreground pixel;
    ties go to the smallest row, then the smallest column."""
    h, w = gt.shape
    fg = [(r, c) for r in range(h) for c in range(w) if gt[r, c]]
    dist = np.zeros((h, w))
    idx = np.zeros((h, w, 2), dtype=int)
    for r in range(h):
        for c in range(w):
            if gt[r, c]:
                idx[r, c] = (r, c)
                continue
            best = None
            for fr, fc in fg:
                d2 = (fr - r) ** 2 + (fc - c) ** 2
                if best is None or d2 < best[0]:
                    best = (d2, fr, fc)
            dist[r, c] = math.sqrt(best[0])
            idx[r, c] = best[1:]
    return dist, idx


def gauss7(sigma=5.0):
    k = np.zeros((7, 7))
    for i in range(7):
        for j in range(7):
            k[i, j] = math.exp(-((i - 3) ** 2 + (j - 3) ** 2) / (2 * sigma * sigma))
    k[k < EPS * k.max()] = 0
    return k / k.sum()


def weighted_f(pred, gt):
    g = gt.astype(np.float64)
    h, w = gt.shape
    if g.sum() == 0:
        return 1.0 if np.all(pred == 0) else 0.0
    e = np.abs(pred - g)
    dist, idx = nearest_foreground(gt)
    et = e.copy()
    for r in range(h):
        for c in range(w):
            if not gt[r, c]:
                et[r, c] = e[idx[r, c, 0], idx[r, c, 1]]
    k = gauss7()
    ea = np.zeros((h, w))
    for r in range(h):
        for c in range(w):
            s = 0.0
            for i in range(7):
                for j in range(7):
                    rr, cc = r + i - 3, c + j - 3
                    if 0 <= rr < h and 0 <= cc < w:
                        s += k[i, j] * et[rr, cc]
            ea[r, c] = s
    min_e = np.where(gt & (ea < e), ea, e)
    b = np.where(gt, 1.0, 2.0 - np.exp(math.log(0.5) / 5.0 * dist))
    ew = min_e * b
    tpw = g.sum() - ew[gt].sum()
    fpw = ew[~gt].sum()
    rec = 1.0 - ew[gt].mean()
    prec = tpw / (tpw + fpw + EPS)
    return float(2.0 * rec * prec / (rec + prec + EPS))


def main():
    for kind in ("ellipse", "offset_square", "ring"):
        pred, gt = fixture(kind)
        print(f"{kind}: S={s_measure(pred, gt):.12f} E={e_measure(pred, gt):.12f} "
              f"F={weighted_f(pred, gt):.12f} MAE={mae(pred, gt):.12f}")


if __name__ == "__main__":
    main()
