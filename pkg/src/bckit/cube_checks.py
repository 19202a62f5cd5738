"""Identity catalog over exact cubes and the S- and G-constructions.

Every check runs a number of seeded trials and reports the first failing
trial.  Trial ``t`` draws from ``random.Random(f"{seed}:{id}:{params}:{t}")``
so trials can run in any order or in parallel with identical inputs.
Exhaustive checks ignore the trial count.
"""

import random
from itertools import permutations

from .combinatorics import RangeError, UnknownCheck
from .cubes import (CubeChain, ExactCube, VecObj, addr_text, addresses, boundary, canonical_form,
                    compose, cube_boundary, degeneracy, direct_sum, emi_failure, exactness_failure,
                    face, lambda_i, lambda_op, parse, parse_chain, permute, serialize, tensor,
                    tensor_chain, transposition, zero_cube)
from .linalg import random_invertible
from .results import run_check
from .simplicial import (chi, cub, embed_l, embed_r, g2_cub, g2_transpose, g_cub, g_degeneracy,
                         g_face, iota_face, m_g, random_bounded_s_element, random_g_element,
                         random_s_element, s_degeneracy, s_face, split_chains, zero_s_element)

CUBE_DIM = 4
S_DIM = 2
G_DIM = 1


def random_cube(n, rng, max_dim=CUBE_DIM, labeled=False):
    """Cub of a random flag with top dimension ``max_dim``, in random vertex bases."""
    c = cub(random_bounded_s_element(n + 1, max_dim, rng))
    g = {a: random_invertible(rng, c.verts[a].dim) for a in addresses(n)}
    ginv = {a: m.inverse() for a, m in g.items()}
    verts = c.verts
    if labeled:
        verts = {a: VecObj.atom(v.dim, "E" + addr_text(a)) for a, v in verts.items()}
    maps = {}
    for (i, a), m in c.maps.items():
        b = a[:i - 1] + (a[i - 1] + 1,) + a[i:]
        maps[(i, a)] = g[b] * m * ginv[a]
    return ExactCube(n, verts, maps)


def _chain_map_failure(e):
    lhs = CubeChain([(cub(s_face(e, k)), (-1) ** k) for k in range(e.n + 1)], "tilde")
    rhs = -boundary(CubeChain.of(cub(e), "tilde"))
    if lhs != rhs:
        return f"dims {list(e.dims)}: cub(dE) = {lhs.summary()} but -dCub(E) = {rhs.summary()}"
    return None


# trial bodies: each returns None or a failure description

def _exact(rng, n):
    a, b = random_cube(n, rng), random_cube(n, rng)
    built = {"cub": a, "direct_sum": direct_sum(a, b), "lambda_op": lambda_op(a),
             "degeneracy": degeneracy(a, rng.randint(1, n + 1), rng.choice((-1, 1)))}
    if n >= 1:
        built["face"] = face(a, rng.randint(1, n), rng.choice((-1, 0, 1)))
    p = rng.randint(0, n)
    built["tensor"] = tensor(random_cube(p, rng, max_dim=2), random_cube(n - p, rng, max_dim=2))
    for what, c in built.items():
        bad = exactness_failure(c)
        if bad:
            return f"{what}: {bad}"
    return None


def _boundary_sq(rng, n):
    ch = CubeChain.of(random_cube(n, rng))
    dd = boundary(boundary(ch))
    return None if not dd else f"dd = {dd.summary()}"


def _boundary_degen(rng, n):
    c = random_cube(n - 1, rng)
    i, j = rng.randint(1, n), rng.choice((-1, 1))
    d = boundary(CubeChain.of(degeneracy(c, i, j), "tilde"))
    return None if not d else f"d s_{i}^{j} = {d.summary()}"


def _cubical(rng, n):
    c = random_cube(n, rng)
    for i in range(1, n):
        for k in range(1, i + 1):
            for j in (-1, 0, 1):
                for l in (-1, 0, 1):
                    if face(face(c, k, l), i, j) != face(face(c, i + 1, j), k, l):
                        return f"d_{i}^{j} d_{k}^{l} != d_{k}^{l} d_{i + 1}^{j}"
    for i in range(1, n + 2):
        for j in (-1, 1):
            s = degeneracy(c, i, j)
            keep = (0, -j)
            if any(face(s, i, x) != c for x in keep) or face(s, i, j) != zero_cube(n):
                return f"faces of s_{i}^{j}"
    return None


def _permute(rng, n):
    c = random_cube(n, rng)
    if permute(c, tuple(range(1, n + 1))) != c:
        return "identity permutation moves the cube"
    perms = list(permutations(range(1, n + 1)))
    s, r = rng.choice(perms), rng.choice(perms)
    if permute(permute(c, s), r) != permute(c, compose(r, s)):
        return f"permute(permute(c, {s}), {r}) != permute(c, {compose(r, s)})"
    return None


def _l32(rng, n):
    e = random_s_element(n, S_DIM, rng)
    i = rng.randint(1, n - 1)
    c = cub(s_degeneracy(e, i))
    if permute(c, transposition(n, i)) != c:
        return f"cub(s_{i}E) is not tau_{i}-fixed"
    d = boundary(CubeChain.of(c, "plain")).normalize("cub")
    return None if not d else f"d of a tau_{i}-fixed cube = {d.summary()}"


def _simplicial(rng, n):
    e = random_s_element(n, S_DIM, rng)
    for b in range(n + 1):
        for a in range(b):
            if s_face(s_face(e, b), a) != s_face(s_face(e, a), b - 1):
                return f"d_{a} d_{b} != d_{b - 1} d_{a}"
    for j in range(n + 1):
        s = s_degeneracy(e, j)
        for i in range(n + 2):
            lhs = s_face(s, i)
            if i < j:
                rhs = s_degeneracy(s_face(e, i), j - 1)
            elif i in (j, j + 1):
                rhs = e
            else:
                rhs = s_degeneracy(s_face(e, i - 1), j)
            if lhs != rhs:
                return f"d_{i} s_{j}"
        for i in range(j + 1):
            if s_degeneracy(s, i) != s_degeneracy(s_degeneracy(e, i), j + 1):
                return f"s_{i} s_{j} != s_{j + 1} s_{i}"
    return None


def _chain_random(rng, n):
    return _chain_map_failure(random_s_element(n, S_DIM, rng))


def _l31(rng, n):
    e = random_s_element(n, S_DIM, rng)
    c = cub(e)
    if cub(s_degeneracy(e, 0)) != degeneracy(c, 1, -1):
        return "cub(s_0 E) != s_1^-1 cub(E)"
    if cub(s_degeneracy(e, n)) != degeneracy(c, n, 1):
        return f"cub(s_{n} E) != s_{n}^1 cub(E)"
    for i in range(1, n):
        x = cub(s_degeneracy(e, i))
        if permute(x, transposition(n, i)) != x:
            return f"cub(s_{i} E) is not tau_{i}-fixed"
    return None


def bw_faces(e, i):
    """The three predicted faces of cub(E) along axis i."""
    n = e.n
    low = e
    for k in range(n, i, -1):
        low = s_face(low, k)
    low = cub(low)
    for k in range(i, n - 1):
        low = degeneracy(low, k, 1)
    high = e
    for _ in range(i):
        high = s_face(high, 0)
    high = cub(high)
    for k in range(1, i):
        high = degeneracy(high, k, -1)
    return {-1: low, 0: cub(s_face(e, i)), 1: high}


def _bw_faces(rng, n):
    e = random_s_element(n, S_DIM, rng)
    c = cub(e)
    for i in range(1, n):
        for j, want in bw_faces(e, i).items():
            if face(c, i, j) != want:
                return f"d_{i}^{j} cub(E) with dims {list(e.dims)}"
    return None


def _l33(rng, n):
    c = random_cube(n, rng, labeled=True)
    a = canonical_form(lambda_i(lambda_i(c, 1), 2))
    b = canonical_form(lambda_i(lambda_i(c, 2), 1))
    if a != b:
        return "lambda_2 lambda_1 and lambda_1 lambda_2 differ after sorting summands"
    t = transposition(2, 1)
    if canonical_form(permute(lambda_op(c), t)) != canonical_form(lambda_op(permute(c, t))):
        return "tau(lambda F) and lambda(tau F) differ after sorting summands"
    return None


def _emi_remark(rng, n):
    lam = lambda_op(random_cube(n, rng, labeled=True))
    bad = emi_failure(lam)
    if bad:
        return bad
    for i in range(1, n + 1):
        if lambda_i(lam, i) != direct_sum(lam, degeneracy(face(lam, i, 1), i, 1)):
            return f"lambda_{i} of an emi cube is not the cube plus s_{i}^1 d_{i}^1"
    return None


def _chi_faces(rng, n):
    e = random_g_element(n, G_DIM, rng)
    if chi(0, e, 1) != chi(0, e, -1):
        return "chi(iota_0) differs between signs"
    for sign in (1, -1):
        if chi(n + 1, e, sign) != zero_s_element(n):
            return f"chi(iota_{n + 1}) is not the basepoint"
        if n == 0:
            continue
        for k in range(n + 2):
            for i in range(n + 1):
                if chi(iota_face(k, i), g_face(e, i), sign) != s_face(chi(k, e, sign), i):
                    return f"d_{i} chi(iota_{k}) with sign {sign:+d}"
    return None


def _p52_left(rng, n, m):
    e, f = random_g_element(n, G_DIM, rng), random_g_element(m, G_DIM, rng)
    lhs = g2_cub(m_g(e, f), "cub")
    rhs = tensor_chain(g_cub(e, "cub"), g_cub(f, "cub"))
    return None if lhs == rhs else f"Cub m(E,F) = {lhs.summary()} vs {rhs.summary()}"


def _p52_right(rng, n):
    e = random_g_element(n, G_DIM, rng)
    lhs, rhs = g2_cub(embed_r(e), "cub"), g_cub(e, "cub")
    return None if lhs == rhs else f"Cub R(E) = {lhs.summary()} vs {rhs.summary()}"


def _lr_switch(rng, n):
    e = random_g_element(n, G_DIM, rng)
    if g2_transpose(embed_r(e)) != embed_l(e):
        return "T R(E) != L(E)"
    if g2_cub(embed_l(e), "cub") != g_cub(e, "cub"):
        return "Cub L(E) != Cub(E)"
    return None


def _g2_degen(rng, n, m):
    e, f = random_g_element(n, G_DIM, rng), random_g_element(m, G_DIM, rng)
    k = rng.randint(0, n)
    x = g2_cub(m_g(g_degeneracy(e, k), f), "cub")
    if x:
        return f"m(s_{k}E, F) gives {x.summary()}"
    k = rng.randint(0, m)
    x = g2_cub(m_g(e, g_degeneracy(f, k)), "cub")
    return None if not x else f"m(E, s_{k}F) gives {x.summary()}"


def _serialize(rng, n):
    c = lambda_op(random_cube(n, rng, labeled=True))
    if parse(serialize(c)) != c:
        return "cube text round trip"
    ch = cube_boundary(c)
    if parse_chain(ch.text()) != ch:
        return "chain text round trip"
    return None


def _chain_split(n):
    for e in split_chains(n, 2):
        bad = _chain_map_failure(e)
        if bad:
            return bad
    return None


# id -> (parameter names, body, minimum per parameter, exhaustive)
CATALOG = {
    "EXACT": (("n",), _exact, (0,), False),
    "BOUNDARY-SQ": (("n",), _boundary_sq, (0,), False),
    "BOUNDARY-DEGEN": (("n",), _boundary_degen, (1,), False),
    "CUBICAL": (("n",), _cubical, (0,), False),
    "PERMUTE": (("n",), _permute, (0,), False),
    "SERIALIZE": (("n",), _serialize, (0,), False),
    "L32": (("n",), _l32, (2,), False),
    "SIMPLICIAL": (("n",), _simplicial, (1,), False),
    "CHAIN-SPLIT": (("n",), _chain_split, (2,), True),
    "CHAIN-RANDOM": (("n",), _chain_random, (2,), False),
    "L31": (("n",), _l31, (1,), False),
    "BW-FACES": (("n",), _bw_faces, (2,), False),
    "L33": (("n",), _l33, (2,), False),
    "EMI-REMARK": (("n",), _emi_remark, (0,), False),
    "CHI-FACES": (("n",), _chi_faces, (0,), False),
    "P52-LEFT": (("n", "m"), _p52_left, (0, 0), False),
    "P52-RIGHT": (("n",), _p52_right, (0,), False),
    "LR-SWITCH": (("n",), _lr_switch, (0,), False),
    "G2-DEGEN": (("n", "m"), _g2_degen, (0, 0), False),
}

MAX_PARAMS = {"L33": {"n": 2}, "CHAIN-SPLIT": {"n": 3}}


def _validate(check_id, params):
    if check_id not in CATALOG:
        raise UnknownCheck(check_id)
    names, fn, lows, exhaustive = CATALOG[check_id]
    if set(params) != set(names):
        raise RangeError(f"{check_id} takes parameters {names}, got {sorted(params)}")
    for name, low in zip(names, lows):
        value = params[name]
        high = MAX_PARAMS.get(check_id, {}).get(name)
        if not isinstance(value, int) or isinstance(value, bool) or value < low or (
                high is not None and value > high):
            raise RangeError(f"{check_id}: parameter {name}={value!r} out of range")
    return names, fn, exhaustive


def trial_rng(seed, check_id, params, trial):
    tag = ",".join(f"{k}={params[k]}" for k in sorted(params))
    return random.Random(f"{seed}:{check_id}:{tag}:{trial}")


def evaluate_cube_identity(check_id, params, trials=100, seed=0):
    """First failure description, else None."""
    names, fn, exhaustive = _validate(check_id, params)
    args = [params[name] for name in names]
    if exhaustive:
        return fn(*args)
    for t in range(trials):
        bad = fn(trial_rng(seed, check_id, params, t), *args)
        if bad:
            return f"trial {t}: {bad}"
    return None


def check_cube_identity(check_id, params, trials=100, seed=0):
    _validate(check_id, params)
    if not isinstance(trials, int) or trials < 1:
        raise RangeError(f"trials must be a positive integer, got {trials!r}")
    return run_check(check_id, params, lambda: evaluate_cube_identity(check_id, params, trials, seed))
