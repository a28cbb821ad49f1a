"""Deterministic text output: CSV with 17 significant digits, JSON, SVG."""
import io
import json
import math
import numbers


def fmt_value(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, numbers.Integral):
        return str(int(x))
    if isinstance(x, numbers.Real):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    return str(x)


def csv_text(columns, rows):
    out = io.StringIO()
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(fmt_value(x) for x in row) + "\n")
    return out.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return fmt_value(obj)
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return obj.item()
    return obj


def json_text(obj):
    return json.dumps(_jsonable(obj), indent=2, sort_keys=False) + "\n"


_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _ticks(lo, hi, count=6):
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def svg_plot(series, xlabel, ylabel, title, width=760, height=520, ymax=None):
    """Self-contained SVG line plot.

    ``series`` is a list of ``(label, xs, ys)``; curves are clipped to
    ``[0, ymax]`` in y when ``ymax`` is given.
    """
    left, right, top, bottom = 70, 150, 40, 60
    pw, ph = width - left - right, height - top - bottom
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys if math.isfinite(y)]
    x0, x1 = min(xs_all), max(xs_all)
    y0 = min(0.0, min(ys_all))
    y1 = ymax if ymax is not None else max(ys_all)
    if y1 <= y0:
        y1 = y0 + 1.0

    def px(x):
        return left + (x - x0) / (x1 - x0) * pw

    def py(y):
        y = min(max(y, y0), y1)
        return top + (1.0 - (y - y0) / (y1 - y0)) * ph

    out = io.StringIO()
    out.write(f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
              f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">\n')
    out.write(f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n')
    out.write(f'<text x="{left + pw / 2:.1f}" y="{top - 15}" text-anchor="middle" '
              f'font-size="14">{title}</text>\n')
    out.write(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>\n')
    for t in _ticks(x0, x1):
        X = px(t)
        out.write(f'<line x1="{X:.2f}" y1="{top + ph}" x2="{X:.2f}" y2="{top + ph + 5}" stroke="black"/>\n')
        out.write(f'<text x="{X:.2f}" y="{top + ph + 18}" text-anchor="middle">{t:g}</text>\n')
    for t in _ticks(y0, y1):
        Y = py(t)
        out.write(f'<line x1="{left - 5}" y1="{Y:.2f}" x2="{left}" y2="{Y:.2f}" stroke="black"/>\n')
        out.write(f'<text x="{left - 8}" y="{Y + 4:.2f}" text-anchor="end">{t:g}</text>\n')
    out.write(f'<text x="{left + pw / 2:.1f}" y="{height - 15}" text-anchor="middle">{xlabel}</text>\n')
    out.write(f'<text x="18" y="{top + ph / 2:.1f}" text-anchor="middle" '
              f'transform="rotate(-90 18 {top + ph / 2:.1f})">{ylabel}</text>\n')
    for idx, (label, xs, ys) in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys) if math.isfinite(y))
        out.write(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}"/>\n')
        ly = top + 12 + idx * (ph - 12) / max(len(series), 1)
        out.write(f'<line x1="{left + pw + 10}" y1="{ly:.2f}" x2="{left + pw + 30}" y2="{ly:.2f}" '
                  f'stroke="{color}" stroke-width="2"/>\n')
        out.write(f'<text x="{left + pw + 35}" y="{ly + 4:.2f}">{label}</text>\n')
    out.write("</svg>\n")
    return out.getvalue()
