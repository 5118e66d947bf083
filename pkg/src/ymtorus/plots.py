"""Minimal self-contained SVG line plots (no plotting dependency).

Good enough for run diagnostics: linear/log axes, a handful of curves with
a legend, tick labels in scientific notation.
"""

import numpy as np

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 70, 20, 34, 48


def _transform(vals, log):
    vals = np.asarray(vals, dtype=float)
    if log:
        vals = np.where(vals > 0, vals, np.nan)
        return np.log10(vals)
    return vals


def _ticks(lo, hi, log):
    if not np.isfinite(lo) or not np.isfinite(hi):
        return []
    if hi <= lo:
        hi = lo + 1.0
    if log:
        lo_i, hi_i = int(np.floor(lo)), int(np.ceil(hi))
        step = max(1, (hi_i - lo_i) // 6)
        return [(v, "1e%d" % v) for v in range(lo_i, hi_i + 1, step)]
    span = hi - lo
    step = 10 ** np.floor(np.log10(span / 4))
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= 6:
            step *= mult
            break
    first = np.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + 1e-12 * span:
        out.append((v, "%.3g" % v))
        v += step
    return out


def line_plot(path, x, curves, xlabel="", ylabel="", title="",
              logx=False, logy=False):
    """Write an SVG with the given curves (name -> y array)."""
    x_t = _transform(x, logx)
    ys_t = {name: _transform(y, logy) for name, y in curves.items()}
    finite = [v for arr in ys_t.values() for v in np.asarray(arr).ravel()
              if np.isfinite(v)]
    if not finite or not np.isfinite(x_t).any():
        finite = [0.0, 1.0]
    xlo, xhi = np.nanmin(x_t), np.nanmax(x_t)
    ylo, yhi = min(finite), max(finite)
    if xhi <= xlo:
        xhi = xlo + 1.0
    if yhi <= ylo:
        yhi = ylo + 1.0
    pad = 0.05 * (yhi - ylo)
    ylo, yhi = ylo - pad, yhi + pad

    def px(v):
        return _ML + (v - xlo) / (xhi - xlo) * (_W - _ML - _MR)

    def py(v):
        return _H - _MB - (v - ylo) / (yhi - ylo) * (_H - _MT - _MB)

    parts = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
             'font-family="sans-serif" font-size="11">' % (_W, _H)]
    parts.append('<rect width="%d" height="%d" fill="white"/>' % (_W, _H))
    parts.append('<text x="%d" y="18" font-size="13">%s</text>' % (_ML, title))
    # axes box
    parts.append('<rect x="%d" y="%d" width="%d" height="%d" fill="none" '
                 'stroke="black"/>' % (_ML, _MT, _W - _ML - _MR, _H - _MT - _MB))
    for v, lbl in _ticks(xlo, xhi, logx):
        parts.append('<line x1="%.1f" y1="%d" x2="%.1f" y2="%d" stroke="#999"/>'
                     % (px(v), _H - _MB, px(v), _H - _MB + 4))
        parts.append('<text x="%.1f" y="%d" text-anchor="middle">%s</text>'
                     % (px(v), _H - _MB + 16, lbl))
    for v, lbl in _ticks(ylo, yhi, logy):
        parts.append('<line x1="%d" y1="%.1f" x2="%d" y2="%.1f" stroke="#999"/>'
                     % (_ML - 4, py(v), _ML, py(v)))
        parts.append('<text x="%d" y="%.1f" text-anchor="end">%s</text>'
                     % (_ML - 6, py(v) + 4, lbl))
    parts.append('<text x="%d" y="%d" text-anchor="middle">%s</text>'
                 % ((_ML + _W - _MR) // 2, _H - 10, xlabel))
    parts.append('<text x="14" y="%d" transform="rotate(-90 14 %d)" '
                 'text-anchor="middle">%s</text>'
                 % ((_MT + _H - _MB) // 2, (_MT + _H - _MB) // 2, ylabel))
    for idx, (name, y_t) in enumerate(ys_t.items()):
        pts = []
        for xv, yv in zip(np.atleast_1d(x_t), np.atleast_1d(y_t)):
            if np.isfinite(xv) and np.isfinite(yv):
                pts.append("%.1f,%.1f" % (px(xv), py(yv)))
        color = _COLORS[idx % len(_COLORS)]
        if pts:
            parts.append('<polyline points="%s" fill="none" stroke="%s" '
                         'stroke-width="1.5"/>' % (" ".join(pts), color))
        ly = _MT + 14 + 14 * idx
        parts.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="%s" '
                     'stroke-width="2"/>' % (_W - _MR - 110, ly - 4, _W - _MR - 90, ly - 4, color))
        parts.append('<text x="%d" y="%d">%s</text>' % (_W - _MR - 85, ly, name))
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))
