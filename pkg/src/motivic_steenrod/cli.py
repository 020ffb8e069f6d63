"""Command-line front end.

Exit codes: 0 success or passing verification, 1 verification failure,
2 usage, parse or evaluation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import cache as memo_cache
from .algebra import AElement, Caps, TensorElement, basis_enumerate
from .bsigma import BSigmaElement, BSigmaTensor, psi_r_bsigma
from .parser import EvalError, ParseError, eval_text
from .power_ops import UnsupportedInputError
from .report import Report
from .series import NotInvertibleError, TruncationError

DEFAULT_WINDOW = (-40, 40)
SUITES = ("hopf", "series", "inversion", "recurrences", "power-ops", "conishida", "ops-compat", "steinberger", "all")
CONFIG_ENV = "MOTIVIC_STEENROD_CONFIG"

_HELP_EPILOG = """\
expressions:
  generators  T0 T1 ... (tau_i)   X1 X2 ... (xi_i)   tau rho (base ring)   u v (B Sigma_2)
  operators   Q[i](x)  Sq[i](x) = Q[-i](x)  psi(x)  chi(x)
  syntax      sums with +, products with *, powers with ^ (negative only on v)
  The T/X prefixes keep generator names apart from the series variable t.

examples:
  motivic-steenrod q -i 2 "T0"
  motivic-steenrod eval "T0^2"
  motivic-steenrod verify all --window -40:40
"""


class UsageError(ValueError):
    pass


def parse_window(text: str) -> tuple:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"window must look like MIN:MAX, got {text!r}") from None
    if lo > 1 or hi < 1:
        raise UsageError("window must contain t^1")
    return lo, hi


def parse_caps(text: str) -> dict:
    """'tau=8,rho=8,index=8,p=15' -> keyword dict."""
    names = {"tau": "tau_exp", "rho": "rho_exp", "index": "max_index", "p": "p_max", "steps": "max_steps"}
    out = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        key, _, val = part.partition("=")
        if key not in names or not val:
            raise UsageError(f"bad caps entry {part!r}; use keys {', '.join(names)}")
        try:
            out[names[key]] = int(val)
        except ValueError:
            raise UsageError(f"caps value for {key} must be an integer") from None
    return out


def _fix_negative_values(argv: list) -> list:
    """Let '--window -40:40' through argparse, which would read -40:40 as a flag."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--window={nxt}")
        else:
            out.append(a)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", help="t-window MIN:MAX for series computations (default -40:40)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cache", metavar="PATH", help=f"memo cache file (env {memo_cache.ENV_VAR})")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the memo cache")
    common.add_argument("--caps", metavar="SPEC", help="caps such as tau=8,rho=8,index=8,p=15")
    common.add_argument("--config", metavar="PATH", help=f"JSON file with default flags (env {CONFIG_ENV})")

    p = argparse.ArgumentParser(prog="motivic-steenrod", description="Motivic dual Steenrod algebra engine",
                                epilog=_HELP_EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter,
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    e = sub.add_parser("eval", parents=[common], help="reduce an expression")
    e.add_argument("expr")
    q = sub.add_parser("q", parents=[common], help="apply Q^i")
    q.add_argument("-i", type=int, required=True, dest="index")
    q.add_argument("expr")
    for name, text in (("psi", "coproduct (right coaction on B Sigma_2 classes)"), ("chi", "antipode")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("expr")
    c = sub.add_parser("coact", parents=[common], help="coaction on B Sigma_2 or on Ops via t")
    c.add_argument("target", choices=("bsigma", "ops"))
    c.add_argument("expr")
    b = sub.add_parser("basis", parents=[common], help="basis monomials in bidegree (P, Q)")
    b.add_argument("p", type=int)
    b.add_argument("q", type=int)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    k = sub.add_parser("cache", parents=[common], help="inspect or clear the memo cache")
    k.add_argument("action", choices=("clear", "info"))
    return p


def _load_config(args) -> dict:
    path = args.config or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return data


class Settings:
    def __init__(self, args):
        cfg = _load_config(args)
        self.window = parse_window(args.window or cfg.get("window", "-40:40"))
        self.json = args.json or bool(cfg.get("json", False))
        caps = parse_caps(args.caps or cfg.get("caps", ""))
        self.caps = caps
        self.cache_path = None
        if not (args.no_cache or cfg.get("no_cache")):
            self.cache_path = Path(args.cache or cfg.get("cache") or memo_cache.default_path())

    def scalar_caps(self) -> Caps:
        keys = ("tau_exp", "rho_exp", "max_index")
        return Caps(**{k: v for k, v in self.caps.items() if k in keys})

    def v_window(self) -> tuple:
        return (self.window[0], self.window[1])


# output

def _value_json(x) -> dict:
    if isinstance(x, AElement):
        return {"type": "A", "value": x.to_json(), "text": str(x)}
    if isinstance(x, BSigmaElement):
        return {"type": "BSigma2", "value": x.to_json(), "text": str(x)}
    if isinstance(x, (TensorElement, BSigmaTensor)):
        return {"type": type(x).__name__, "value": x.to_json(), "text": str(x)}
    return {"type": type(x).__name__, "value": x.to_json(), "text": str(x)}


def _emit(out, x, as_json: bool) -> None:
    if as_json:
        print(json.dumps(_value_json(x), sort_keys=True), file=out)
    else:
        print(x, file=out)


# verification suites

def run_suite(name: str, window, caps: dict) -> Report:
    from . import hopf, ops, power_ops, series, steinberger
    from .bsigma import cartan_v_rule_check, verify_coaction_ring_map

    def hopf_suite():
        r = Report("hopf")
        r.merge(hopf.verify_hopf_axioms(24))
        r.merge(hopf.verify_relation_consistency(4))
        return r

    def conishida_suite():
        r = Report("conishida")
        for x in ("u", "v"):
            r.merge(power_ops.verify_conishida(x, (-8, 8), 32, window))
        for fs in (("u", "u"), ("u", "v"), ("v", "v")):
            r.merge(power_ops.verify_conishida_product(fs, (-4, 4), 8, window))
        return r

    def power_ops_suite():
        r = Report("power-ops")
        for sub in (power_ops.verify_spot_values(), power_ops.verify_conjugate_reach(4),
                    power_ops.verify_q_properties(12), power_ops.verify_additivity_and_cartan(200, 2024),
                    cartan_v_rule_check(), verify_coaction_ring_map()):
            r.merge(sub)
        return r

    def steinberger_suite():
        scal = {k: v for k, v in caps.items() if k in ("tau_exp", "rho_exp", "max_index")}
        closure = {k: v for k, v in caps.items() if k in ("p_max", "max_steps")}
        cc = steinberger.ClosureCaps(scalars=Caps(**scal), **closure)
        return steinberger.verify_steinberger(4, window, cc)

    table = {
        "hopf": hopf_suite,
        "series": lambda: series.verify_comp_inv(33, window),
        "inversion": lambda: series.verify_inversion_trick((-5, 5), (-16, 16), window),
        "recurrences": lambda: power_ops.verify_recurrences(4, window),
        "power-ops": power_ops_suite,
        "conishida": conishida_suite,
        "ops-compat": lambda: ops.verify_ops_compat((-8, 8), window),
        "steinberger": steinberger_suite,
    }
    if name == "all":
        total = Report("all")
        for key, fn in table.items():
            sub = fn()
            total.merge(sub)
            total.details[key] = {"passed": sub.passed, "checks": sub.checks, "seconds": round(sub.seconds, 3)}
        return total
    return table[name]()


# entry point

def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_fix_negative_values(list(argv)))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = Settings(args)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2

    if args.command == "cache":
        path = cfg.cache_path or Path(args.cache or memo_cache.default_path())
        if args.action == "clear":
            removed = memo_cache.clear(path)
            msg = {"path": str(path), "removed": removed}
            print(json.dumps(msg) if cfg.json else f"{'removed' if removed else 'no cache at'} {path}", file=out)
        else:
            info = memo_cache.info(path, cfg.window)
            if cfg.json:
                print(json.dumps(info, sort_keys=True), file=out)
            else:
                for k, v in info.items():
                    print(f"{k}: {v}", file=out)
        return 0

    if cfg.cache_path is not None:
        memo_cache.load(cfg.cache_path, cfg.window)
    try:
        code = _dispatch(args, cfg, out)
    except (ParseError, EvalError, UnsupportedInputError, UsageError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (TruncationError, NotInvertibleError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    if cfg.cache_path is not None:
        try:
            memo_cache.save(cfg.cache_path, cfg.window)
        except OSError as exc:
            print(f"warning: cache not written: {exc}", file=err)
    return code


def _dispatch(args, cfg: Settings, out) -> int:
    cmd = args.command
    if cmd == "eval":
        _emit(out, eval_text(args.expr, cfg.v_window()), cfg.json)
    elif cmd == "q":
        _emit(out, eval_text(f"Q[{args.index}]({args.expr})", cfg.v_window()), cfg.json)
    elif cmd in ("psi", "chi"):
        _emit(out, eval_text(f"{cmd}({args.expr})", cfg.v_window()), cfg.json)
    elif cmd == "coact":
        x = eval_text(args.expr, cfg.v_window())
        if isinstance(x, AElement):
            from .parser import _as_bsigma
            x = _as_bsigma(x)
        if not isinstance(x, BSigmaElement):
            raise EvalError("coact takes a class of B Sigma_2")
        if args.target == "bsigma":
            _emit(out, psi_r_bsigma(x, cfg.v_window()), cfg.json)
        else:
            from .ops import psi_l, t_map
            y = psi_l(t_map(x), cfg.window).restrict(2 * cfg.window[0])
            _emit(out, y, cfg.json)
    elif cmd == "basis":
        rows = basis_enumerate((args.p, args.q), cfg.scalar_caps())
        if cfg.json:
            print(json.dumps([{"scalar": [a, b], "monomial": AElement(frozenset([m.key])).to_json()[0]}
                              for (a, b), m in rows]), file=out)
        else:
            for (a, b), m in rows:
                s = AElement.monomial(a, b) * AElement(frozenset([m.key]))
                print(s, file=out)
    elif cmd == "verify":
        report = run_suite(args.suite, cfg.window, cfg.caps)
        print(report.dumps() if cfg.json else report.summary(), file=out)
        return 0 if report.passed else 1
    return 0


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
