"""Parameter sweeps behind the ``verify`` and ``enumerate`` commands.

Each sweep is a list of independent cases and a function from a case to a
Report, so the driver can run cases in worker processes and still emit them
in case order.
"""

from __future__ import annotations

import random
import time

from .endoscopy import (
    EndoDatum,
    elliptic_data,
    endoscopic_levi,
    levi_preimages,
    preimage_to_triple,
    semisimple_rank_so_pair,
    sign_sum,
    sign_sum_closed,
    sign_sum_recursive,
    split_sequences,
    triple_to_preimage,
)
from .levi import LeviSp, enumerate_levis_so_pair, enumerate_levis_sp, semisimple_rank_sp
from .lparams import (
    block_dim,
    corollary_data,
    factorizations,
    random_discrete,
    validate_discrete,
)
from .opcalc import check_commutation
from .report import FAIL, PASS, SKIP, Report, verdict
from .ssclasses import (
    GenerationError,
    check_fiber_bijection,
    check_prime,
    random_regular_levi_class,
    regular_classes_exist,
)


# -- enumerate ---------------------------------------------------------------


def enumerate_levis(n: int) -> list[Report]:
    out = []
    for i, M in enumerate(enumerate_levis_sp(n)):
        out.append(Report("enumerate.levis", {"n": n, "index": i}, PASS, {
            "levi": str(M), "gl_parts": list(M.gl_parts), "m": M.m, "rank": semisimple_rank_sp(M),
        }))
    return out


def enumerate_endoscopic(n: int) -> list[Report]:
    return [
        Report("enumerate.endoscopic", {"n": n, "datum": str(d)}, PASS,
               {"n_p": d.n_p, "n_pp": d.n_pp, "group": str(d.group())})
        for d in elliptic_data(n)
    ]


def enumerate_split_seqs(n: int) -> list[Report]:
    out = []
    for M in enumerate_levis_sp(n):
        for d in elliptic_data(n):
            seqs = split_sequences(M, d)
            out.append(Report("enumerate.split-seqs", {"n": n, "levi": str(M), "datum": str(d)}, PASS, {
                "count": len(seqs),
                "splits": [{"s": str(s), "M_s_bang": str(endoscopic_levi(M, s, d)[1])} for s in seqs],
            }))
    return out


# -- sign lemma --------------------------------------------------------------


def sign_lemma_cases(kmax: int):
    return [(a, b) for a in range(kmax + 1) for b in range(kmax + 1)]


def sign_lemma_case(case) -> Report:
    k_p, k_pp = case
    values = {
        "enumeration": sign_sum(k_p, k_pp),
        "recursion": sign_sum_recursive(k_p, k_pp),
        "closed_form": sign_sum_closed(k_p, k_pp),
    }
    ok = len(set(values.values())) == 1
    return Report("verify.sign-lemma", {"k_p": k_p, "k_pp": k_pp}, verdict(ok), values,
                  None if ok else values)


# -- levi preimages ----------------------------------------------------------


def levi_preimage_cases(nmax: int, nmin: int = 0):
    return [(n, d.n_p, d.n_pp) for n in range(nmin, nmax + 1) for d in elliptic_data(n)]


def levi_preimage_case(case) -> list[Report]:
    """All standard Levis L of one G^!: sign identity, triple bijection, brute-force M(L)."""
    n, n_p, n_pp = case
    d = EndoDatum(n_p, n_pp)
    brute = {}
    for M in enumerate_levis_sp(n):
        for s in split_sequences(M, d):
            brute.setdefault(endoscopic_levi(M, s, d)[1], set()).add((M, s))
    out = []
    for L in enumerate_levis_so_pair(n_p, n_pp):
        pairs, triples = levi_preimages(L, d)
        lhs = sum((-1) ** semisimple_rank_sp(M) for M, _ in pairs)
        rhs = (-1) ** semisimple_rank_so_pair(L)
        roundtrip = all(
            preimage_to_triple(M, s) == t and triple_to_preimage(t, d, L.m_p + L.m_pp) == (M, s)
            for (M, s), t in zip(pairs, triples)
        )
        matches_brute = set(pairs) == brute.get(L, set()) and len(set(pairs)) == len(pairs)
        ok = lhs == rhs and roundtrip and matches_brute
        details = {"size": len(pairs), "lhs": lhs, "rhs": rhs, "triple_roundtrip": roundtrip,
                   "matches_brute_force": matches_brute}
        out.append(Report("verify.levi-preimages", {"n": n, "datum": str(d), "L": str(L)},
                          verdict(ok), details, None if ok else details))
    return out


# -- fiber bijection ---------------------------------------------------------


def fiber_cases(nmax: int, primes, trials: int, seed: int, nmin: int = 1):
    out = []
    for p in primes:
        check_prime(p)
        for n in range(nmin, nmax + 1):
            for M in enumerate_levis_sp(n):
                for d in elliptic_data(n):
                    out.append((p, n, M.gl_parts, M.m, d.n_p, d.n_pp, trials, seed))
    return out


def fiber_case(case) -> Report:
    p, n, parts, m, n_p, n_pp, trials, seed = case
    M, d = LeviSp(parts, m, n), EndoDatum(n_p, n_pp)
    params = {"p": p, "n": n, "levi": str(M), "datum": str(d)}
    if not regular_classes_exist(n, p):
        return Report("verify.fiber-bijection", params, SKIP,
                      {"reason": f"F_{p}^x has only {(p - 3) // 2} inverse pairs avoiding +-1; no regular class of rank {n}"})
    rng = random.Random(f"{seed}/{p}/{n}/{M}/{d}")
    sizes = set()
    for trial in range(trials):
        try:
            gamma = random_regular_levi_class(M, p, rng)
        except GenerationError as exc:
            return Report("verify.fiber-bijection", params, FAIL, {"trials": trial},
                          {"generation": str(exc)})
        rep = check_fiber_bijection(gamma, d)
        if not rep.bijective or rep.binomial_ok is False:
            return Report("verify.fiber-bijection", params, FAIL, {"trials": trial + 1},
                          {"gamma": repr(gamma), "detail": repr(rep.counterexample),
                           "sizes": [rep.fiber_size, rep.levi_side_size]})
        sizes.add((rep.fiber_size, rep.levi_side_size))
    details = {"trials": trials, "sizes": sorted(sizes)}
    if M.is_whole():
        details["binomial_checked"] = True
    return Report("verify.fiber-bijection", params, PASS, details)


# -- commutation -------------------------------------------------------------


def commutation_cases(nmax: int, non_elliptic: bool = False, nmin: int = 1):
    out = []
    for n in range(nmin, nmax + 1):
        for d in elliptic_data(n):
            out.append((n, (), n, d.n_p, d.n_pp))
    if non_elliptic:
        for n in range(nmin, nmax + 1):
            for M in enumerate_levis_sp(n):
                if M.is_whole():
                    continue
                for d in elliptic_data(M.m):
                    out.append((n, M.gl_parts, M.m, d.n_p, d.n_pp))
    return out


def commutation_case(case) -> Report:
    n, parts, m, n_p, n_pp = case
    d = EndoDatum(n_p, n_pp)
    ambient = LeviSp(parts, m, n) if parts else None
    rep = check_commutation(n, d, ambient)
    params = {"n": n, "datum": str(d), "ambient": str(ambient) if ambient else "elliptic"}
    details = {
        "residual": str(rep.residual),
        "levis": len(rep.table),
        "table": [[str(r.levi), r.coefficient, r.expected, r.via_sign_lemma] for r in rep.table],
        "assumption": rep.assumption,
    }
    if ambient:
        details["chain"] = rep.chain
    if rep.passed:
        return Report("verify.commutation", params, PASS, details)
    return Report("verify.commutation", params, FAIL, details, {"first_residual": rep.first_residual_word})


# -- L-parameters ------------------------------------------------------------


def subset_sum_count(dims, target) -> int:
    """Number of index subsets of ``dims`` adding up to ``target``."""
    ways = {0: 1}
    for x in dims:
        nxt = dict(ways)
        for s, c in ways.items():
            nxt[s + x] = nxt.get(s + x, 0) + c
        ways = nxt
    return ways.get(target, 0)


def check_partition(phi) -> list[str]:
    """Problems found for one parameter across every elliptic datum; empty if none."""
    problems = [f"not discrete: {e}" for e in validate_discrete(phi)]
    dims = [block_dim(b) for b in phi.blocks]
    for d in elliptic_data(phi.n):
        facs = factorizations(phi, d)
        expected = subset_sum_count(dims, 2 * d.n_p)
        if len(facs) != expected:
            problems.append(f"{d}: {len(facs)} factorizations, subset-sum count {expected}")
        for fp, fpp in facs:
            if validate_discrete(fp) or validate_discrete(fpp):
                problems.append(f"{d}: factor not discrete")
            for block in phi.blocks:
                rho, a = block
                sides = (block in fp.jord) + (block in fpp.jord)
                if sides != 1:
                    problems.append(f"{d}: block ({rho.id},{a}) in {sides} factors")
                    continue
                cd = corollary_data(fp, fpp, block)
                primed = block in fp.jord
                want_alpha = 1 if primed else rho.omega_m1
                want_choice = (rho.dim, 0) if primed else (0, rho.dim)
                if cd.alpha not in (1, -1) or cd.alpha != want_alpha:
                    problems.append(f"{d}: alpha {cd.alpha} for ({rho.id},{a})")
                if cd.x * 2 != a - 1 or cd.x < 0:
                    problems.append(f"{d}: x {cd.x} for a={a}")
                if cd.levi_choice != want_choice or cd.m != phi.n - rho.dim:
                    problems.append(f"{d}: levi choice {cd.levi_choice} for ({rho.id},{a})")
    return problems


def lparam_cases(trials: int, nmax: int, seed: int):
    rng = random.Random(f"lparam/{seed}")
    return [(rng.randint(1, nmax), rng.getrandbits(64)) for _ in range(trials)]


def lparam_case(case):
    n, sub_seed = case
    phi = random_discrete(n, random.Random(sub_seed))
    return n, str(phi), check_partition(phi)


def lparam_reports(results, nmax: int) -> list[Report]:
    out = []
    for n in range(1, nmax + 1):
        rows = [r for r in results if r[0] == n]
        bad = [(s, probs) for _, s, probs in rows if probs]
        params = {"n": n}
        details = {"parameters": len(rows), "failures": len(bad)}
        if bad:
            out.append(Report("verify.lparam-partition", params, FAIL, details,
                              {"phi": bad[0][0], "problems": bad[0][1][:3]}))
        else:
            out.append(Report("verify.lparam-partition", params, PASS, details))
    return out


def timed(fn, case, with_time: bool):
    start = time.perf_counter()
    result = fn(case)
    if with_time:
        elapsed = round(time.perf_counter() - start, 4)
        for r in result if isinstance(result, list) else [result]:
            if isinstance(r, Report):
                r.details["seconds"] = elapsed
    return result


def flatten(results):
    out = []
    for r in results:
        out.extend(r if isinstance(r, list) else [r])
    return out

