"""Command-line interface.

Subcommands: places, lfunc, classgroup, whittaker, eta, verify, table.
Exit codes: 0 success, 1 usage error, 2 verification mismatch, 3 internal failure.
Machine output (json, csv) carries exact values only; human output may add
decimal approximations, marked as such.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .config import Config, parse_keyvalues

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Mismatch(Exception):
    """A verification failed; carries the diagnostic payload."""

    def __init__(self, payload):
        super().__init__("verification mismatch")
        self.payload = payload


# output ---------------------------------------------------------------------------


def _is_lnq(x) -> bool:
    return isinstance(x, dict) and set(x) == {"lnq_coeff"}


def render_lnq(c: str, q: int) -> str:
    """'c · ln q' plus a marked decimal approximation."""
    approx = float(Fraction(c)) * math.log(q)
    return f"{c} · ln q  (≈ {approx:.6f}, approximate)"


def _human(x, q: int, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(x, dict):
        for k, v in x.items():
            if _is_lnq(v):
                out.append(f"{pad}{k}: {render_lnq(v['lnq_coeff'], q)}")
            elif isinstance(v, (dict, list)):
                out.append(f"{pad}{k}:")
                out.extend(_human(v, q, indent + 1))
            else:
                out.append(f"{pad}{k}: {v}")
    elif isinstance(x, list):
        for item in x:
            if isinstance(item, (dict, list)):
                lines = _human(item, q, indent + 1)
                out.append(f"{pad}- " + lines[0].strip() if lines else f"{pad}-")
                out.extend(lines[1:])
            else:
                out.append(f"{pad}- {item}")
    else:
        out.append(f"{pad}{x}")
    return out


def _flatten(d, prefix="") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if _is_lnq(v):
            out[key] = v["lnq_coeff"]
        elif isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = ";".join(str(x) for x in v)
        else:
            out[key] = v
    return out


def emit(payload: dict, fmt: str, q: int, stream=None):
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "csv":
        rows = payload.get("rows")
        if rows is None:
            rows = [{k: v for k, v in payload.items()}]
        flat = [_flatten(r) for r in rows]
        cols = []
        for r in flat:
            cols += [c for c in r if c not in cols]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
        stream.write(buf.getvalue())
    else:
        stream.write("\n".join(_human(payload, q)) + "\n")


# configuration ----------------------------------------------------------------------


def config_from_args(args) -> Config:
    base = {}
    if args.config:
        try:
            with open(args.config) as fh:
                base = parse_keyvalues(fh.read())
        except OSError as e:
            raise UsageError(f"cannot read config file: {e}") from e
    for name in ("q", "D", "alpha", "modulus", "epsilon_inf", "twist_c"):
        val = getattr(args, name, None)
        if val is not None:
            base[name] = val
    if "q" not in base or "D" not in base:
        raise UsageError("--q and --D are required (on the command line or in --config)")
    try:
        cfg = Config.make(**base)
        cfg.K, cfg.C, cfg.prof  # noqa: B018 - validate eagerly
    except (ValueError, ArithmeticError, KeyError) as e:
        raise UsageError(f"invalid configuration: {e}") from e
    return cfg


def parse_sweep(text: str | None) -> dict:
    out = {"degbeta": 2, "random": 0, "maxwork": 20000}
    if not text:
        return out
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"sweep item {part!r} lacks '='")
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in out:
            raise UsageError(f"unknown sweep key {k!r}; known: {sorted(out)}")
        try:
            out[k] = int(v)
        except ValueError as e:
            raise UsageError(f"sweep value for {k} must be an integer") from e
    return out


def _parse_y_beta(cfg: Config, y_text: str | None, beta_text: str | None):
    from .places import parse_idele
    from .poly import parse_fn

    try:
        y = parse_idele(cfg.R, y_text or "")
        beta = parse_fn(cfg.R, beta_text) if beta_text is not None else None
    except (ValueError, ArithmeticError, KeyError) as e:
        raise UsageError(f"cannot parse --y/--beta: {e}") from e
    return y, beta


def _request(cfg: Config, y, beta):
    from .eisenstein import Request, StandingAssumptionError

    try:
        return Request(cfg.C, cfg.prof, y, beta)
    except StandingAssumptionError as e:
        raise UsageError(str(e)) from e


# subcommands ------------------------------------------------------------------------


def cmd_places(args, cfg: Config) -> dict:
    from .places import INF, places_upto

    K = cfg.K
    rows = []
    for v in places_upto(cfg.R, args.bound) + [INF]:
        rows.append({"place": v.label(cfg.R), "degree": v.deg, "splitting": K.splitting(v).name.lower()})
    return {"config": cfg.to_text().strip().split("\n"), "f_inf": K.f_inf, "genus": K.genus, "rows": rows}


def cmd_lfunc(args, cfg: Config) -> dict:
    from .eisenstein import field_data
    from .lfunc import L_logderiv0, L_value0

    ld, _ = field_data(cfg.K)
    return {"L": [str(c) for c in ld.L.c], "genus": ld.genus, "L(0)": str(L_value0(ld)),
            "L'(0)/L(0)": L_logderiv0(ld).to_json(),
            "functional_equation": ld.functional_equation_holds()}


def cmd_classgroup(args, cfg: Config) -> dict:
    from .eisenstein import field_data
    from .lfunc import L_value0

    ld, cg = field_data(cfg.K)
    expected = cfg.K.f_inf * L_value0(ld)
    payload = {"h": cg.h, "f_inf*L(0)": str(expected), "class_number_formula": cg.h == expected,
               "representatives": [{"a": cfg.R.fmt(I.a), "b": cfg.R.fmt(I.b), "c": cfg.R.fmt(I.c),
                                    "d": cfg.R.fmt(I.d)} for I in cg.reps]}
    if cg.h != expected:
        raise Mismatch(payload)
    return payload


def cmd_whittaker(args, cfg: Config) -> dict:
    from .whittaker import ORACLE_MAX_QV, local_whittaker, oracle_whittaker

    y, beta = _parse_y_beta(cfg, args.y, args.beta)
    if beta is None or beta.is_zero():
        raise UsageError("whittaker needs a nonzero --beta")
    req = _request(cfg, y, beta)
    rows, bad = [], False
    for v in req.S:
        case = req.case(v)
        W = local_whittaker(case, args.which)
        row = {"place": v.label(cfg.R), "splitting": case.splitting.name.lower(), "m": case.m,
               "in_diff": case.in_diff, "scalar": str(W.scalar),
               "F_num": [str(c) for c in W.F.num.c], "F_den": [str(c) for c in W.F.den.c],
               "F(1)": str(W.F(1))}
        if case.qv <= ORACLE_MAX_QV:
            orc = oracle_whittaker(case, args.which)
            agree = all(W.at(uv) == val for uv, val in orc.samples.items())
            row["oracle"] = "agree" if agree else "MISMATCH"
            bad |= not agree
        else:
            row["oracle"] = "skipped (q_v too large)"
        rows.append(row)
    payload = {"instance": list(req.key()), "section": args.which, "rows": rows}
    if bad:
        raise Mismatch(payload)
    return payload


def cmd_eta(args, cfg: Config) -> dict:
    from .cycles import verify_main
    from .eisenstein import eta_constant, eta_constant_formula

    y, beta = _parse_y_beta(cfg, args.y, args.beta if args.beta is not None else "0")
    req = _request(cfg, y, beta)
    if beta.is_zero():
        a, b = eta_constant(req), eta_constant_formula(req)
        payload = {"instance": list(req.key()), "coefficient": "constant",
                   "prefactor": str(a.prefactor), "lnq_coeff": str(a.lnq.c),
                   "paths": {"series": a.to_json(), "formula": b.to_json()}, "ok": a == b}
    else:
        rep = verify_main(req)
        payload = rep.to_json()
        payload = {"instance": payload["instance"], "diff": payload["diff"],
                   "prefactor": str(rep.closed.prefactor), "lnq_coeff": str(rep.closed.lnq.c),
                   "paths": payload["paths"], "ok": rep.ok}
    if not payload["ok"]:
        raise Mismatch(payload)
    return payload


def run_instance(task) -> dict:
    """One sweep instance from picklable text: (config text, y text, beta text, max work)."""
    from .cycles import cycle_work, verify_main
    from .eisenstein import field_data, theta_ideal
    from .ideals import class_sum_size

    cfg_text, y_text, beta_text, max_work = task
    cfg = Config.from_text(cfg_text)
    y, beta = _parse_y_beta(cfg, y_text, beta_text)
    req = _request(cfg, y, beta)
    row = {"instance": list(req.key()), "diff": [v.label(cfg.R) for v in req.diff]}
    if max_work:
        work = max(class_sum_size(field_data(cfg.K)[1], theta_ideal(req), 1), cycle_work(req))
        if work > max_work:
            row["status"] = "skipped"
            return row
    try:
        rep = verify_main(req)
    except ArithmeticError as e:
        row.update(status="error", error=str(e))
        return row
    row.update(closed=rep.closed.total.to_json(), whittaker=rep.whittaker.total.to_json(),
               cycle=rep.cycle.total.to_json(), status="ok" if rep.ok else "mismatch")
    return row


def _sweep_tasks(args, cfg: Config | None, sw: dict) -> list:
    from .sweep import DEFAULT_FIELDS, FieldSetup, all_betas, generate, minimal_idele

    tasks = []
    if sw["random"]:
        if cfg is None:
            fields = DEFAULT_FIELDS
        else:
            mod = cfg.R.F.modulus if cfg.modulus else None
            fields = [FieldSetup(cfg.q, cfg.D, cfg.alpha, mod)]
        for req in generate(fields, sw["random"], seed=args.seed, max_deg=sw["degbeta"], max_work=sw["maxwork"]):
            ctext = Config.make(req.K.q, req.R.fmt(req.K.D), str(req.C.alpha),
                                modulus=_modtext(req.R), twist_c=str(req.prof.c)).to_text()
            tasks.append((ctext, req.y.fmt(), str(req.beta), 0))
        return tasks
    if cfg is None:
        raise UsageError("an exhaustive sweep needs --q and --D (or use --sweep random=N)")
    ctext = cfg.with_(twist_c=str(cfg.twist)).to_text()
    for beta in all_betas(cfg.R, sw["degbeta"]):
        y = args.y if args.y is not None else minimal_idele(cfg.R, cfg.prof, beta).fmt()
        tasks.append((ctext, y, str(beta), sw["maxwork"]))
    return tasks


def _modtext(R):
    from .config import format_modulus

    F = R.F
    return format_modulus(R.q, F.modulus) if R.q != F.p else None


def _run_tasks(tasks, jobs: int) -> list[dict]:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(run_instance, tasks, chunksize=4))
    else:
        rows = [run_instance(t) for t in tasks]
    return sorted(rows, key=lambda r: r["instance"])


def cmd_verify(args, cfg: Config | None) -> dict:
    sw = parse_sweep(args.sweep)
    rows = _run_tasks(_sweep_tasks(args, cfg, sw), args.jobs)
    count = {s: sum(r["status"] == s for r in rows) for s in ("ok", "mismatch", "skipped", "error")}
    summary = {"instances": len(rows), **count,
               "diff_one": sum(len(r["diff"]) == 1 and r["status"] == "ok" for r in rows),
               "nonzero": sum(r["status"] == "ok" and Fraction(r["closed"]["lnq_coeff"]) != 0 for r in rows)}
    payload = {"summary": summary, "rows": rows if args.format != "human" else
               [r for r in rows if r["status"] in ("mismatch", "error")]}
    if count["error"]:
        raise InternalFailure(payload)
    if count["mismatch"]:
        raise Mismatch(payload)
    return payload


def cmd_table(args, cfg: Config) -> dict:
    from .eisenstein import eta_coeff_closed
    from .sweep import all_betas

    y, _ = _parse_y_beta(cfg, args.y, None)
    rows = []
    for beta in all_betas(cfg.R, args.degbeta):
        req = _request(cfg, y, beta)
        eta = eta_coeff_closed(req)
        rows.append({"beta": str(beta), "diff": [v.label(cfg.R) for v in req.diff],
                     "eta": eta.total.to_json()})
    return {"y": y.fmt(), "twist_c": str(cfg.twist), "rows": rows}


class InternalFailure(Exception):
    def __init__(self, payload):
        super().__init__("internal consistency failure")
        self.payload = payload


# parser --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--config", help="file of key=value lines (q, D, alpha, modulus, epsilon_inf, twist_c)")
    g.add_argument("--q", type=int, help="odd prime power")
    g.add_argument("--modulus", help="for non-prime q: monic irreducible polynomial in a over F_p, e.g. 'a^2+1'")
    g.add_argument("--D", help="squarefree polynomial with k(sqrt D) imaginary, e.g. 't^3+2*t+2'")
    g.add_argument("--alpha", help="nonzero polynomial scaling the norm form (default 1)")
    g.add_argument("--epsilon-inf", dest="epsilon_inf", help="override the scalar at infinity")
    g.add_argument("--twist-c", dest="twist_c", help="psi = psi_0(c x); default is the standard twist")
    g.add_argument("--format", choices=("json", "csv", "human"), default="human")
    g.add_argument("--seed", type=int, default=0, help="seed for random sweeps")

    p = _Parser(prog="ffeisen", description="Fourier coefficients of the central derivative of an "
                "incoherent Eisenstein series over F_q(t), checked against special-cycle degrees.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("places", parents=[common], help="splitting of places up to a degree bound")
    s.add_argument("--bound", type=int, default=2)
    sub.add_parser("lfunc", parents=[common], help="L(u, chi_K), L(0) and L'(0)/L(0)")
    sub.add_parser("classgroup", parents=[common], help="class group and the class number formula")
    s = sub.add_parser("whittaker", parents=[common], help="local Whittaker closed forms against the oracle")
    s.add_argument("--y", default="", help="idele, e.g. '(t)=t,inf=1/t'")
    s.add_argument("--beta", required=True)
    s.add_argument("--which", choices=("alpha", "tilde"), default="alpha")
    s = sub.add_parser("eta", parents=[common], help="one coefficient by all three paths")
    s.add_argument("--y", default="")
    s.add_argument("--beta", default="0")
    s = sub.add_parser("verify", parents=[common], help="sweep the main identity")
    s.add_argument("--sweep", help="comma list: degbeta=N, random=N (per field), maxwork=N")
    s.add_argument("--y", default=None, help="fix y for the exhaustive beta sweep")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s = sub.add_parser("table", parents=[common], help="coefficient table over beta of bounded degree")
    s.add_argument("--y", default="")
    s.add_argument("--degbeta", type=int, default=2)
    return p


COMMANDS = {"places": cmd_places, "lfunc": cmd_lfunc, "classgroup": cmd_classgroup,
            "whittaker": cmd_whittaker, "eta": cmd_eta, "verify": cmd_verify, "table": cmd_table}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    q = args.q or 3
    try:
        if args.command == "verify" and args.q is None and args.D is None and args.config is None:
            cfg = None
        else:
            cfg = config_from_args(args)
            q = cfg.q
        payload = COMMANDS[args.command](args, cfg)
    except UsageError as e:
        sys.stderr.write(f"ffeisen: error: {e}\n")
        return EXIT_USAGE
    except Mismatch as e:
        emit({"status": "mismatch", **e.payload}, "json" if args.format == "human" else args.format, q)
        return EXIT_MISMATCH
    except InternalFailure as e:
        emit({"status": "internal failure", **e.payload}, "json", q)
        return EXIT_INTERNAL
    except (ArithmeticError, AssertionError) as e:
        emit({"status": "internal failure", "error": f"{type(e).__name__}: {e}"}, "json", q, sys.stderr)
        return EXIT_INTERNAL
    emit(payload, args.format, q)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
