"""Pure-Python sparse multiplication on packed monomial keys."""
from ._errors import ExponentOverflow


def mul_terms(one_key, guard, cut, a, b):
    """Multiply two term dicts ``{key: coeff}``.

    ``cut`` is the smallest key with lambda degree at or beyond the truncation
    order (-1 for no truncation).  Keys are ordered by lambda degree first, so
    with ``b`` sorted the inner loop can stop at the first key past ``cut``.
    """
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return {}
    b_items = sorted(b.items())
    out = {}
    get = out.get
    for ka, ca in a.items():
        base = ka - one_key
        if cut >= 0:
            limit = cut - base
            for kb, cb in b_items:
                if kb >= limit:
                    break
                k = base + kb
                c = ca * cb
                if k & 2:
                    k -= 2
                    c = -c
                if k & guard or k < 0:
                    raise ExponentOverflow("exponent out of range in product")
                v = get(k)
                out[k] = c if v is None else v + c
        else:
            for kb, cb in b_items:
                k = base + kb
                c = ca * cb
                if k & 2:
                    k -= 2
                    c = -c
                if k & guard or k < 0:
                    raise ExponentOverflow("exponent out of range in product")
                v = get(k)
                out[k] = c if v is None else v + c
    return {k: c for k, c in out.items() if c}
