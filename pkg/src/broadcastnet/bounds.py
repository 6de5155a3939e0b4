"""Edge-count upper bounds and the two comparison tables.

All evaluations are exact integer arithmetic; every half term in the
closed forms is an integer once multiplied out (k/2 * 2^k = k * 2^[k-1]),
and fractional middle terms are rounded up explicitly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ParamOutOfRange
from .params import ceil_log2, floor_log2, make_params, max_k


def bound_farley(n: int) -> int:
    """General upper bound ceil(n * ceil(log2 n) / 2)."""
    if n < 2:
        raise ParamOutOfRange("bound defined for n >= 2")
    return (n * ceil_log2(n) + 1) // 2


def hl_decomposition(n: int) -> tuple[int, int, int] | None:
    """Unique (p, k, r) with n = 2^p - 2^k - r, 0 <= k <= p-2, 0 <= r < 2^k.

    None when n is a power of two (no admissible k exists)."""
    if n < 4:
        return None
    p = ceil_log2(n)
    rem = (1 << p) - n
    if rem == 0:
        return None
    k = floor_log2(rem)
    r = rem - (1 << k)
    if k > p - 2 or r >= 1 << k:
        return None
    return p, k, r


def bound_hl_direct(n: int) -> int:
    """Direct-construction bound n(p-k+1) - 2^(p-k) - (p-k)(3p+k-3)/2 + 2k."""
    if n < 4:
        raise ParamOutOfRange("bound defined for n >= 4")
    dec = hl_decomposition(n)
    if dec is None:
        raise ParamOutOfRange(f"n={n} is a power of two; no decomposition n = 2^p - 2^k - r")
    p, k, _ = dec
    return n * (p - k + 1) - (1 << (p - k)) - (p - k) * (3 * p + k - 3) // 2 + 2 * k


def bound_knodel_even(n: int) -> int:
    """Modified-Knoedel-graph bound n * floor(log2 n) / 2 for even n."""
    if n % 2:
        raise ParamOutOfRange(f"n={n} must be even")
    return n * floor_log2(n) // 2


def hln_hypotheses(n_even: int) -> dict[str, bool]:
    """The four hypotheses attached to the odd-n bound, evaluated at the even n."""
    m = ceil_log2(n_even)
    prime = m > 1 and all(m % q for q in range(2, int(m**0.5) + 1))
    not_mersenne = (m + 1) & m != 0  # m != 2^j - 1
    divides = n_even % m == 0 if m else False
    order_ok = False
    if prime and m > 2:
        divisors = [d for d in range(1, m - 1) if (m - 1) % d == 0]
        order_ok = all(pow(2, d, m) != 1 for d in divisors)
    return {"log_prime": prime, "log_not_mersenne": not_mersenne,
            "log_divides_n": divides, "two_has_full_order": order_ok}


def bound_hln_odd(n_odd: int) -> tuple[int, dict[str, bool]]:
    """Odd-n bound evaluated at n = n_odd - 1:
    ceil(n*floor(log n)/2 + n/ceil(log n)) + ceil(log n) - 2.

    The numeric value is always computed; the hypothesis flags say whether
    the bound's stated hypotheses actually hold at this n."""
    if n_odd % 2 == 0:
        raise ParamOutOfRange(f"n={n_odd} must be odd")
    n = n_odd - 1
    fl, cl = floor_log2(n), ceil_log2(n)
    value = n * fl // 2 + (n + cl - 1) // cl + cl - 2
    flags = hln_hypotheses(n)
    return value, flags


def bound_5a(t: int, k: int) -> int:
    """Full-size edge count (k+1)N - (t - k/2 + 2)2^k + t - k + 2."""
    params = make_params(t, k, ((1 << k) - 1) << (t + 1 - k))
    N = params.N
    return (k + 1) * N - (t + 2) * (1 << k) + k * (1 << (k - 1)) + t - k + 2


def bound_5b(t: int, k: int, n: int) -> int:
    """Shrunk-size bound (k+1-p)n - (t - k/2 + p + 2)2^k + t - k - (p-2)2^p."""
    params = make_params(t, k, n)
    p = params.p
    return ((k + 1 - p) * n - (t + p + 2) * (1 << k) + k * (1 << (k - 1))
            + t - k - (p - 2) * (1 << p))


# ---------------------------------------------------------------------------
# per-n report


@dataclass
class BoundReport:
    n: int
    bounds: dict[str, dict]

    @property
    def best(self) -> str | None:
        usable = {name: b["value"] for name, b in self.bounds.items()
                  if b["applicable"]}
        if not usable:
            return None
        return min(usable, key=lambda name: (usable[name], name))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "bounds": self.bounds, "best": self.best},
                          separators=(",", ":")) + "\n"


def bound_report(n: int) -> BoundReport:
    """Evaluate bounds (1)-(5) at one n with applicability flags."""
    bounds: dict[str, dict] = {}

    def entry(name, fn, *args, reason=""):
        try:
            value = fn(*args)
        except ParamOutOfRange as exc:
            bounds[name] = {"value": None, "applicable": False, "reason": str(exc)}
            return
        bounds[name] = {"value": value, "applicable": True, "reason": reason}

    entry("farley", bound_farley, n)
    entry("hl_direct", bound_hl_direct, n)
    if n % 2 == 0:
        entry("knodel_even", bound_knodel_even, n)
    else:
        bounds["knodel_even"] = {"value": None, "applicable": False, "reason": "n is odd"}
    if n % 2 == 1:
        try:
            value, flags = bound_hln_odd(n)
            bounds["hln_odd"] = {"value": value, "applicable": all(flags.values()),
                                 "reason": json.dumps(flags, sort_keys=True),
                                 "hypotheses": flags}
        except ParamOutOfRange as exc:
            bounds["hln_odd"] = {"value": None, "applicable": False, "reason": str(exc)}
    else:
        bounds["hln_odd"] = {"value": None, "applicable": False, "reason": "n is even"}

    t = ceil_log2(n) - 1
    best_val = None
    best_k = None
    if t >= 7:
        for k in range(2, max_k(t, n_odd=bool(n % 2)) + 1):
            try:
                val = bound_5b(t, k, n)
            except ParamOutOfRange:
                continue
            if best_val is None or val < best_val:
                best_val, best_k = val, k
    if best_val is None:
        bounds["construction"] = {"value": None, "applicable": False,
                                  "reason": f"no admissible k at t={t}"}
    else:
        bounds["construction"] = {"value": best_val, "applicable": True,
                                  "reason": f"t={t}, k={best_k}"}
    return BoundReport(n=n, bounds=bounds)


# ---------------------------------------------------------------------------
# tables


def table1(t_min: int, t_max: int) -> list[tuple[int, int, int, int, int]]:
    """Rows (t, k, N, ours, hl) over the full-size parameter grid."""
    rows = []
    for t in range(t_min, t_max + 1):
        for k in range(2, t // 2):
            N = ((1 << k) - 1) << (t + 1 - k)
            rows.append((t, k, N, bound_5a(t, k), bound_hl_direct(N)))
    return rows


def table1_csv(t_min: int, t_max: int) -> str:
    lines = ["t,k,n,ours,hl"]
    lines += [",".join(str(x) for x in row) for row in table1(t_min, t_max)]
    return "\n".join(lines) + "\n"


_FACSIMILE_ROWS_T14 = [
    16385, 16386, 16387, 24575, 24576, 24577, 24578, 24579,
    28671, 28672, 28673, 28674, 30719, 30720, 30721, 30722, 30723,
    31743, 31744, 31745, 31746, 31747, 32255,
]


def _facsimile_rows(t: int, k_range: list[int]) -> list[int]:
    if t == 14:
        return list(_FACSIMILE_ROWS_T14)
    lo = (1 << t) + 1
    rows = {lo, lo + 1, lo + 2}
    tops = [((1 << k) - 1) << (t + 1 - k) for k in k_range]
    for N in tops[:-1]:
        rows.update(range(N - 1, N + 4))
    rows.add(tops[-1] - 1)
    return sorted(r for r in rows if lo <= r < tops[-1])


def table2(t: int, n_values: list[int] | None = None,
           k_range: list[int] | None = None,
           facsimile: bool = False) -> tuple[list[str], list[list]]:
    """Header and rows for the shrunk-size comparison table.

    Cells hold ints or None (blank).  Columns: n, one per k, the odd-n
    bound, the direct-construction bound."""
    ks = k_range if k_range is not None else list(range(2, t // 2))
    if n_values is None:
        if facsimile:
            n_values = _facsimile_rows(t, ks)
        else:
            top = ((1 << ks[-1]) - 1) << (t + 1 - ks[-1])
            n_values = list(range((1 << t) + 1, top))
    header = ["n"] + [f"k={k}" for k in ks] + ["hln", "hl"]
    hl_floor = ((1 << ks[-2]) - 1) << (t + 1 - ks[-2]) if len(ks) > 1 else 0
    rows = []
    for n in n_values:
        row: list = [n]
        for k in ks:
            try:
                row.append(bound_5b(t, k, n))
            except ParamOutOfRange:
                row.append(None)
        if n % 2:
            row.append(bound_hln_odd(n)[0])
        else:
            row.append(None)
        if facsimile and n <= hl_floor:
            row.append(None)
        else:
            try:
                row.append(bound_hl_direct(n))
            except ParamOutOfRange:
                row.append(None)
        rows.append(row)
    return header, rows


def table2_csv(t: int, n_values: list[int] | None = None,
               k_range: list[int] | None = None, facsimile: bool = False) -> str:
    header, rows = table2(t, n_values, k_range, facsimile)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join("" if c is None else str(c) for c in row))
    return "\n".join(lines) + "\n"
