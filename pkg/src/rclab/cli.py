"""Command-line front door: computations and verification suites with JSON reports.

Every subcommand echoes its effective configuration into the report, sorts
check records by name, and stringifies all rationals, so identical
invocations produce byte-identical JSON.  Exit codes: 0 all checks pass,
1 a check failed (witness included), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import coeffsolve, forms, nearlyholo, rep, starprod, uniq
from .exactcore import rat
from .forms import GradedForm, form_by_name


@dataclass
class RunConfig:
    prec: int = 20
    hbar_order: int = 4
    grid_bound: int = 4
    kappa_samples: tuple = ("1/2", "3/2", "2", "5/2")
    seed: int = 0

    def validate(self) -> None:
        if self.prec < 2:
            raise ValueError("prec must be >= 2")
        if self.hbar_order < 0:
            raise ValueError("hbar_order must be >= 0")

    def as_obj(self) -> dict:
        return {
            "prec": self.prec,
            "hbar_order": self.hbar_order,
            "grid_bound": self.grid_bound,
            "kappa_samples": list(self.kappa_samples),
            "seed": self.seed,
        }


def load_config(path: str | None, args: argparse.Namespace) -> RunConfig:
    """key=value file, overridden by any explicitly supplied flags."""
    cfg = RunConfig()
    if path:
        with open(path) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, _, value = line.partition("=")
                key, value = key.strip(), value.strip()
                if key in ("prec", "hbar_order", "grid_bound", "seed"):
                    setattr(cfg, key, int(value))
                elif key == "kappa_samples":
                    cfg.kappa_samples = tuple(v.strip() for v in value.split(",") if v.strip())
                else:
                    raise ValueError(f"unknown config key {key!r}")
    for key in ("prec", "hbar_order", "grid_bound", "seed"):
        v = getattr(args, key, None)
        if v is not None:
            setattr(cfg, key, v)
    if getattr(args, "kappas", None):
        cfg.kappa_samples = tuple(args.kappas.split(","))
    cfg.validate()
    return cfg


class Suite:
    """Collects named check records and renders the report."""

    def __init__(self, command: str, cfg: RunConfig):
        self.command = command
        self.cfg = cfg
        self.checks: list[dict] = []

    def check(self, name: str, ok: bool, params: dict | None = None, **data) -> None:
        rec = {"name": name, "status": "pass" if ok else "fail", "params": params or {}}
        for k, v in data.items():
            rec[k] = v
        self.checks.append(rec)

    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def report(self) -> dict:
        return {
            "command": self.command,
            "config": self.cfg.as_obj(),
            "checks": sorted(self.checks, key=lambda c: c["name"]),
            "ok": self.ok(),
        }


def _jsonify(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(_jsonify(report), sort_keys=True, separators=(",", ":")))
        return
    print(f"# {report['command']}")
    for c in report["checks"]:
        flag = "ok  " if c["status"] == "pass" else "FAIL"
        extra = {k: v for k, v in c.items() if k not in ("name", "status", "params")}
        tail = f"  {_jsonify(extra)}" if extra else ""
        print(f"  [{flag}] {c['name']}{tail}")
    print(f"result: {'pass' if report['ok'] else 'FAIL'}")


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------


def _catalogue(prec: int) -> dict:
    return {
        "E4": forms.eisenstein_form(4, prec),
        "E6": forms.eisenstein_form(6, prec),
        "Delta": forms.delta(prec),
    }


def suite_forms(s: Suite) -> None:
    prec = max(s.cfg.prec, 16)
    cat = _catalogue(prec)
    e4, e6, d = cat["E4"], cat["E6"], cat["Delta"]
    rel = (e4 * e4 * e4).series - (e6 * e6).series
    s.check("forms/discriminant-relation", rel == d.series.scale(1728), {"prec": prec})
    eta = forms.eta_log_derivative(prec)
    s.check("forms/eta-log-derivative", eta.scale(6) == forms.eisenstein(2, prec), {"prec": prec})
    phi = forms.phi_zagier(prec)
    s.check("forms/phi-normalization", phi.series.scale(144) == e4.series, {"prec": prec})


def suite_canonical(s: Suite, n_max: int | None = None, phi_sign: str = "both") -> None:
    prec = max(s.cfg.prec, 12)
    n_max = n_max if n_max is not None else 6
    cat = _catalogue(prec)
    pairs = [("E4", "E6"), ("E4", "Delta"), ("E6", "Delta")]
    phi_plus = forms.phi_zagier(prec)
    phi_minus = phi_plus.scale(-1)
    for a, b in pairs:
        f, g = cat[a], cat[b]
        if phi_sign in ("minus", "both"):
            repm = nearlyholo.verify_canonical_rc(f, g, n_max, phi_minus)
            s.check(
                f"canonical/corrected-element/{a}-{b}",
                repm["ok"],
                {"n_max": n_max, "prec": prec, "phi": "-E4/144"},
            )
        if phi_sign == "both":
            repp = nearlyholo.verify_canonical_rc(f, g, n_max, phi_plus)
            s.check(
                f"canonical/quoted-element-mismatch-reproduced/{a}-{b}",
                not repp["ok"],
                {"n_max": n_max, "prec": prec, "phi": "+E4/144"},
                witness=_jsonify(repp["failures"][:1]),
            )
        if phi_sign == "plus":
            repp = nearlyholo.verify_canonical_rc(f, g, n_max, phi_plus)
            s.check(
                f"canonical/quoted-element/{a}-{b}",
                repp["ok"],
                {"n_max": n_max, "prec": prec, "phi": "+E4/144"},
                witness=_jsonify(repp["failures"][:1]),
            )


def suite_combi(s: Suite, n_max: int = 5) -> None:
    prec = s.cfg.prec
    cat = _catalogue(prec)
    for a, b in [("E4", "E6"), ("E4", "Delta")]:
        ok = True
        try:
            for n in range(n_max + 1):
                nearlyholo.combi_bracket(cat[a], cat[b], n)
        except AssertionError:
            ok = False
        s.check(f"combi/holomorphic-and-equal/{a}-{b}", ok, {"n_max": n_max, "prec": prec})


def suite_der(s: Suite, m_max: int = 5) -> None:
    prec = max(s.cfg.prec, 12)
    cat = _catalogue(prec)
    for name, f in cat.items():
        ok = all(nearlyholo.verify_der_identity(f, m) for m in range(m_max + 1))
        s.check(f"der/{name}", ok, {"m_max": m_max, "prec": prec})


def suite_casimir(s: Suite, n_max: int = 10) -> None:
    for w in (2, 4, 6, 12):
        ok = True
        for n in range(n_max + 1):
            v = rep.DSVector.basis(w, n)
            if not (rep.casimir(v) - v.scale(rep.casimir_eigenvalue(w))).is_zero():
                ok = False
        s.check(f"casimir/weight-{w}", ok, {"n_max": n_max, "eigenvalue": str(rep.casimir_eigenvalue(w))})


def suite_propasso(s: Suite, n_kernel: int = 8, n_realize: int = 4) -> None:
    prec = s.cfg.prec
    cat = _catalogue(prec)
    ok = all(
        rep.tensor_lower(rep.lowest_weight_tensor(x, y, n)).is_zero()
        for n in range(n_kernel + 1)
        for x in (2, 4, 8)
        for y in (4, 6, 12)
    )
    s.check("propasso/tensor-kernel", ok, {"n_max": n_kernel})
    from .exactcore import pochhammer

    f, g = cat["E4"], cat["E6"]
    ok = True
    for n in range(n_realize + 1):
        got = rep.realize_and_multiply(rep.lowest_weight_tensor(4, 6, n), f, g)
        want = nearlyholo.rc_bracket(f, g, n).series.scale(
            1 / (pochhammer(4, n) * pochhammer(6, n))
        )
        if not (got.is_holomorphic() and got.ypoly[0] == want.truncate(got.prec)):
            ok = False
    s.check("propasso/realization-E4-E6", ok, {"n_max": n_realize, "prec": prec})


def suite_triple(s: Suite, n_max: int = 8, xi_n_max: int = 3) -> None:
    dims_ok = all(
        rep.triple_kernel_dim((4, 4, 6), n) == n + 1
        and len(rep.degree_slice(n)) == (n + 1) * (n + 2) // 2
        for n in range(n_max + 1)
    )
    s.check("triple/kernel-dimensions", dims_ok, {"n_max": n_max})
    pre_ok = True
    for n in range(1, 6):
        for tgt in rep.degree_slice(n - 1):
            try:
                rep.triple_preimage(tgt)
            except AssertionError:
                pre_ok = False
    s.check("triple/preimage-formula", pre_ok, {"n_max": 5})
    prec = max(10, min(s.cfg.prec, 15))
    cat = _catalogue(prec)
    triples = [("E4", "E4", "E6"), ("E4", "E6", "Delta")]
    for names in triples:
        f, g, h = (cat[x] for x in names)
        ok = all(
            rep.verify_xi_lowest_weight(f, g, h, n, p)
            for n in range(xi_n_max + 1)
            for p in range(n + 1)
        )
        s.check(f"triple/xi-kernel/{'-'.join(names)}", ok, {"n_max": xi_n_max, "prec": prec})


def suite_ident(s: Suite, n_max: int = 5, grid: int | None = None) -> None:
    grid = grid if grid is not None else s.cfg.grid_bound
    for kap_s in s.cfg.kappa_samples:
        kap = rat(kap_s)
        table = coeffsolve.ATable.from_kappa(kap, n_max, 4 * grid + 2 * n_max)
        bad = 0
        count = 0
        for n in range(n_max + 1):
            for p in range(n + 1):
                for k in range(1, grid + 1):
                    for l in range(1, grid + 1):
                        for m in range(1, grid + 1):
                            count += 1
                            if starprod.ident_residual(table, k, l, m, n, p) != 0:
                                bad += 1
        s.check(
            f"ident/kappa-{kap_s.replace('/', 'over')}",
            bad == 0,
            {"n_max": n_max, "grid": grid},
            checked=count,
            nonzero=bad,
        )


def suite_assoc(s: Suite) -> None:
    prec = s.cfg.prec
    order = s.cfg.hbar_order
    cat = _catalogue(prec)
    eh = starprod.StarCoefficients.eholzer()
    for names in [("E4", "E4", "E6"), ("E4", "E6", "Delta")]:
        f, g, h = (GradedForm.from_form(cat[x]) for x in names)
        res = starprod.assoc_residual(f, g, h, eh, order)
        s.check(
            f"assoc/eholzer/{'-'.join(names)}",
            res.is_zero(),
            {"order": order, "prec": prec},
        )
    free_ok = all(
        not starprod.free_assoc_residual(w, eh, order)
        for w in [(2, 2, 2), (4, 6, 12), (2, 4, 8)]
    )
    s.check("assoc/eholzer-free-model", free_ok, {"order": order})


def suite_solve_unique(s: Suite, grid: int = 6) -> None:
    known = coeffsolve.ATable.eholzer(1, 4 * grid + 12)
    sys2 = coeffsolve.build_ident_system(2, grid, known)
    res2 = coeffsolve.solve(sys2)
    kernel_ok = False
    if res2.consistent and res2.nullity == 1:
        vec = res2.null_basis[0]
        i0 = sys2.variables.index((2, 2))
        if vec[i0] != 0:
            scale = Fraction(4, 5) / vec[i0]
            kernel_ok = all(
                vec[i] * scale == Fraction(p[0] * p[1], p[0] + p[1] + 1)
                for i, p in enumerate(sys2.variables)
            )
    s.check(
        "solve/level2-nullity-and-kernel",
        res2.consistent and res2.nullity == 1 and kernel_ok,
        {"grid": grid},
        nullity=res2.nullity,
    )
    table = coeffsolve.ATable.eholzer(5, 4 * grid + 12)
    for n in (3, 4, 5):
        sysn = coeffsolve.build_ident_system(n, grid, table)
        resn = coeffsolve.solve(sysn)
        s.check(
            f"solve/level{n}-unique",
            resn.consistent and resn.nullity == 0,
            {"grid": grid},
            nullity=resn.nullity,
        )
    degs = [coeffsolve.degree_in_c(n, (4, 4), list(range(n + 1))) for n in (2, 3, 4)]
    s.check("solve/degree-in-c", degs == [1, 1, 2], {"pair": [4, 4]}, degrees=degs)


def suite_kappa_c(s: Suite, printed: bool = False) -> None:
    for kap_s in s.cfg.kappa_samples:
        repc = coeffsolve.kappa_c_report(rat(kap_s), s.cfg.grid_bound)
        name = f"kappa-c/{kap_s.replace('/', 'over')}"
        if printed:
            s.check(
                name + "/quoted-constant",
                repc["quoted_family_matches_induced"],
                {"grid": s.cfg.grid_bound},
                c_quoted=str(repc["c_quoted"]),
                c_fit=str(repc["c_fit"]),
            )
        else:
            s.check(
                name + "/fit",
                repc["fit_consistent"] and repc["fit_matches_formula"],
                {"grid": s.cfg.grid_bound},
                c_fit=str(repc["c_fit"]),
            )
            s.check(
                name + "/quoted-constant-mismatch-reproduced",
                not repc["quoted_family_matches_induced"],
                {"grid": s.cfg.grid_bound},
                c_quoted=str(repc["c_quoted"]),
                c_fit=str(repc["c_fit"]),
            )


def suite_fine(s: Suite, grid: int = 5, n_max: int = 6) -> None:
    ok2 = all(
        coeffsolve.det2x2_lemma(n, k, l, m) < 0
        for n in range(3, max(3, n_max) + 1)
        for k in range(1, grid + 1)
        for l in range(1, grid + 1)
        for m in range(1, grid + 1)
    )
    s.check("fine/det2x2-closed-form-negative", ok2, {"n_max": n_max, "grid": grid})
    ok3 = all(
        uniq.fine_det3(k, l, m) < 0
        for k in range(1, 7)
        for l in range(1, 7)
        for m in range(k, 7)
    )
    s.check("fine/det3-negative", ok3, {"range": 6})
    d = uniq.fine_det3_mpoly()
    s.check("fine/det3-l2-divisible", all(e[1] >= 2 for e in d.terms), {})
    prec = min(s.cfg.prec, 14)
    cat = _catalogue(prec)
    resid = uniq.bracket_shift_residual(cat["E4"], cat["E4"], cat["E6"], 1)
    s.check("fine/shift-residual-nonconstant-middle", not resid.is_zero(), {"prec": prec})


def suite_p3(s: Suite) -> None:
    repp = uniq.p3_certify_report()
    s.check(
        "p3/substituted-all-positive",
        repp["substituted_all_positive"],
        {},
        witness=repp["positivity_witness"],
    )
    s.check(
        "p3/spot-coefficients",
        repp["coeff_k5_l"] == 48 and repp["coeff_l2_m8"] == 1536,
        {},
        k5_l=str(repp["coeff_k5_l"]),
        l2_m8=str(repp["coeff_l2_m8"]),
    )
    s.check(
        "p3/reference-diff-within-recorded-damage",
        len(repp["inner_diff"]) <= 2 and len(repp["substituted_diff"]) <= 2,
        {},
        inner_diff=repp["inner_diff"],
        substituted_diff=repp["substituted_diff"],
    )


def suite_uniqueness(s: Suite, seeds: int = 200, order: int = 3, prec: int = 15) -> None:
    stats = uniq.random_uniqueness_search(seeds, order=order, prec=prec, seed0=s.cfg.seed)
    s.check(
        "uniqueness/no-counterexamples",
        stats["counterexamples"] == 0 and stats["recovered_constants"] > 0,
        {"seeds": seeds, "order": order, "prec": prec},
        **stats,
    )


SUITES = {
    "forms": suite_forms,
    "canonical": suite_canonical,
    "combi": suite_combi,
    "der": suite_der,
    "casimir": suite_casimir,
    "propasso": suite_propasso,
    "triple": suite_triple,
    "ident": suite_ident,
    "assoc": suite_assoc,
    "solve-unique": suite_solve_unique,
    "kappa-c": suite_kappa_c,
    "fine": suite_fine,
    "p3": suite_p3,
    "uniqueness": suite_uniqueness,
}


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def cmd_form(args: argparse.Namespace) -> int:
    f = form_by_name(args.name, args.prec)
    if args.json:
        obj = {"name": args.name, "weight": f.weight, "series": f.series.to_json_obj()}
        print(json.dumps(_jsonify(obj), sort_keys=True, separators=(",", ":")))
    else:
        print(f"{args.name} (weight {f.weight}): {f.series}")
    return 0


def cmd_bracket(args: argparse.Namespace) -> int:
    f = form_by_name(args.f, args.prec)
    g = form_by_name(args.g, args.prec)
    b = nearlyholo.rc_bracket(f, g, args.n)
    if args.json:
        obj = {
            "f": args.f,
            "g": args.g,
            "n": args.n,
            "weight": b.weight,
            "series": b.series.to_json_obj(),
        }
        print(json.dumps(_jsonify(obj), sort_keys=True, separators=(",", ":")))
    else:
        print(f"[{args.f}, {args.g}]_{args.n} (weight {b.weight}): {b.series}")
    return 0


def cmd_star(args: argparse.Namespace) -> int:
    f = GradedForm.from_form(form_by_name(args.f, args.prec))
    g = GradedForm.from_form(form_by_name(args.g, args.prec))
    if args.kind == "eholzer":
        coeffs = starprod.StarCoefficients.eholzer()
    elif args.kind == "cmz":
        if args.kappa is None:
            print("--kappa is required for --kind cmz", file=sys.stderr)
            return 2
        coeffs = starprod.StarCoefficients.cmz(rat(args.kappa))
    else:
        print(f"unknown coefficient kind {args.kind!r}", file=sys.stderr)
        return 2
    series = starprod.star_product(f, g, coeffs, args.order)
    if args.json:
        obj = {
            "f": args.f,
            "g": args.g,
            "kind": args.kind,
            "kappa": args.kappa,
            "order": args.order,
            "series": series.to_json_obj(),
        }
        print(json.dumps(_jsonify(obj), sort_keys=True, separators=(",", ":")))
    else:
        print(series)
    return 0


def cmd_rep(args: argparse.Namespace) -> int:
    if args.rep_command == "casimir":
        w = args.weight
        rows = []
        ok = True
        for n in range(args.n_max + 1):
            v = rep.DSVector.basis(w, n)
            good = (rep.casimir(v) - v.scale(rep.casimir_eigenvalue(w))).is_zero()
            ok = ok and good
            rows.append({"n": n, "scalar": str(rep.casimir_eigenvalue(w)), "ok": good})
        obj = {"weight": w, "eigenvalue": str(rep.casimir_eigenvalue(w)), "checks": rows, "ok": ok}
        if args.json:
            print(json.dumps(_jsonify(obj), sort_keys=True, separators=(",", ":")))
        else:
            print(f"casimir scalar at weight {w}: {obj['eigenvalue']} ({'ok' if ok else 'FAIL'})")
        return 0 if ok else 1
    if args.rep_command == "kernel-dims":
        rows = []
        ok = True
        for n in range(args.n_max + 1):
            dim = len(rep.degree_slice(n))
            ker = rep.triple_kernel_dim((4, 4, 6), n)
            good = ker == n + 1 and dim == (n + 1) * (n + 2) // 2
            ok = ok and good
            rows.append({"n": n, "slice_dim": dim, "kernel_dim": ker, "ok": good})
        obj = {"checks": rows, "ok": ok}
        if args.json:
            print(json.dumps(_jsonify(obj), sort_keys=True, separators=(",", ":")))
        else:
            for r in rows:
                print(f"n={r['n']}: slice {r['slice_dim']}, kernel {r['kernel_dim']}")
        return 0 if ok else 1
    print("unknown rep subcommand", file=sys.stderr)
    return 2


def cmd_solve(args: argparse.Namespace) -> int:
    if args.solve_command != "an":
        print("unknown solve subcommand", file=sys.stderr)
        return 2
    c = rat(args.c)
    n = args.n
    fam = coeffsolve.a2_family_assoc(c)
    bound = 4 * args.grid + 2 * n + 4

    def fill(level: int, x: int, y: int):
        if level == 2:
            return fam(x, y)
        raise coeffsolve.MissingEntryError(f"A_{level}({x},{y}) not available")

    known = coeffsolve.ATable(2, bound, filler=fill, name=f"family(c={c})")
    if n > 3:
        for j in range(3, n):
            known, _ = coeffsolve.solved_table(j, args.grid + (n - j), known)
    sys_n = coeffsolve.build_ident_system(n, args.grid, known)
    res = coeffsolve.solve(sys_n)
    table = None
    residual_nonzero = None
    if res.consistent and res.nullity == 0:
        table, _ = coeffsolve.solved_table(n, args.grid, known)
        residual_nonzero = 0
        for p in range(n + 1):
            for k in range(1, args.grid + 1):
                for l in range(1, args.grid + 1):
                    for m in range(1, args.grid + 1):
                        if starprod.ident_residual(table, k, l, m, n, p) != 0:
                            residual_nonzero += 1
    kernel = None
    if res.consistent and 0 < res.nullity <= 3:
        kernel = [
            {f"{p}": str(vec[i]) for i, p in enumerate(sys_n.variables) if vec[i] != 0}
            for vec in res.null_basis
        ]
    obj = {
        "n": n,
        "c": str(c),
        "grid": args.grid,
        "consistent": res.consistent,
        "nullity": res.nullity,
        "kernel_basis_size": len(res.null_basis),
        "kernel_basis": kernel,
        "residual_nonzero_count": residual_nonzero,
        "sample_values": None
        if table is None
        else {f"A_{n}({x},{y})": str(table.get(n, x, y)) for x in (2, 4) for y in (2, 4, 6)},
    }
    if args.json:
        print(json.dumps(_jsonify(obj), sort_keys=True, separators=(",", ":")))
    else:
        print(obj)
    return 0 if res.consistent and not residual_nonzero else 1


SUITE_ALIASES = {"cmz-unique": "solve-unique"}


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, args)
    if args.kappa is not None:
        cfg.kappa_samples = (args.kappa,)
    if args.kind is not None and args.kind != "cmz":
        print(f"only cmz coefficient tables are verified here, not {args.kind!r}", file=sys.stderr)
        return 2
    which = SUITE_ALIASES.get(args.suite, args.suite)
    names = list(SUITES) if which == "all" else [which]
    if which != "all" and which not in SUITES:
        print(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or 'all'", file=sys.stderr)
        return 2
    s = Suite(f"verify {args.suite}", cfg)
    for name in names:
        fn = SUITES[name]
        if name == "canonical":
            fn(s, n_max=args.n_max, phi_sign=args.phi_sign)
        elif name == "combi":
            fn(s, n_max=args.n_max if args.n_max is not None else 5)
        elif name == "der":
            fn(s, m_max=args.n_max if args.n_max is not None else 5)
        elif name == "ident":
            fn(s, n_max=args.n_max if args.n_max is not None else 5, grid=args.grid)
        elif name == "uniqueness":
            fn(s, seeds=args.seeds, order=args.order, prec=min(cfg.prec, 15))
        elif name == "kappa-c":
            fn(s, printed=args.printed)
        elif name == "solve-unique":
            fn(s, grid=args.grid if args.grid is not None else 6)
        elif name == "fine":
            fn(
                s,
                grid=args.grid if args.grid is not None else 5,
                n_max=args.n_max if args.n_max is not None else 6,
            )
        else:
            fn(s)
    emit(s.report(), args.json)
    return 0 if s.ok() else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rc-lab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("form", help="print a catalogue form")
    p.add_argument("name")
    p.add_argument("--prec", type=int, default=20)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_form)

    p = sub.add_parser("bracket", help="compute a bracket of two catalogue forms")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prec", type=int, default=20)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_bracket)

    p = sub.add_parser("star", help="compute a deformed product")
    p.add_argument("--kind", default="eholzer")
    p.add_argument("--kappa", default=None)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--prec", type=int, default=20)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_star)

    p = sub.add_parser("rep", help="lowest-weight model computations")
    repsub = p.add_subparsers(dest="rep_command", required=True)
    pc = repsub.add_parser("casimir")
    pc.add_argument("--weight", type=int, required=True)
    pc.add_argument("--n-max", dest="n_max", type=int, default=10)
    pc.add_argument("--json", action="store_true")
    pk = repsub.add_parser("kernel-dims")
    pk.add_argument("--n-max", dest="n_max", type=int, default=8)
    pk.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_rep)

    p = sub.add_parser("solve", help="solve coefficient identity systems")
    solvesub = p.add_subparsers(dest="solve_command", required=True)
    pa = solvesub.add_parser("an")
    pa.add_argument("--n", type=int, required=True)
    pa.add_argument("--grid", type=int, default=6)
    pa.add_argument("--c", default="0")
    pa.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite")
    p.add_argument("--config", default=None)
    p.add_argument("--prec", type=int, default=None)
    p.add_argument("--hbar-order", dest="hbar_order", type=int, default=None)
    p.add_argument("--grid-bound", dest="grid_bound", type=int, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--kappas", default=None, help="comma-separated kappa sample list")
    p.add_argument("--kappa", default=None, help="single kappa sample (overrides the list)")
    p.add_argument("--kind", default=None, help="coefficient kind for the ident suite (cmz)")
    p.add_argument("--n-max", dest="n_max", type=int, default=None)
    p.add_argument("--seeds", type=int, default=200)
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--phi-sign", dest="phi_sign", default="both", choices=("plus", "minus", "both"))
    p.add_argument("--printed", action="store_true", help="assert the quoted kappa->c constant as-is")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    return ap


def _merge_negative_values(argv: list[str]) -> list[str]:
    # argparse rejects option values like -5/4; fold them into --flag=value
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--c", "--kappa") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_merge_negative_values(list(argv)))
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
