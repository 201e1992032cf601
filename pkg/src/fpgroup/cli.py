"""Command-line interface.

Exit codes: 0 for a definitive answer (including finite refutations and
not-just-finite reports), 1 for unreadable or malformed input, 2 when a
budget ran out before an answer was reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .abelian import abelian_invariants
from .certify import (INCONCLUSIVE, Budget, Report, certify_infinite, just_finite_report,
                      verify_presents_same_group)
from .cosets import DEFAULT_MAX_COSETS, Overflow, group_order
from .presentation import Presentation
from .subgroups import DEFAULT_MAX_INDEX, low_index_subgroups
from .syntax import ParseError, parse_presentation, print_presentation
from .transform import cyclic_shortcut, just_finite_transform
from .words import format_word

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNKNOWN = 2


@dataclass(frozen=True)
class CliConfig:
    max_cosets: int = DEFAULT_MAX_COSETS
    max_index: int = DEFAULT_MAX_INDEX
    format: str = "text"
    cyclic_shortcut: bool = False

    @property
    def budget(self) -> Budget:
        return Budget(self.max_cosets, self.max_index)


class InputError(Exception):
    pass


def _read(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def load(path: str) -> Presentation:
    text, name = _read(path)
    try:
        return parse_presentation(text)
    except ParseError as exc:
        raise InputError(exc.render(text, name)) from exc


def _emit(cfg: CliConfig, payload: dict, text: str) -> None:
    if cfg.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_transform(args, cfg: CliConfig) -> int:
    p = load(args.file)
    if cfg.cyclic_shortcut:
        q = cyclic_shortcut(p, cfg.max_cosets)
        if q is not None:
            _emit(cfg, {"presentation": print_presentation(q), "cyclic_shortcut": True, "pairs": []},
                  print_presentation(q))
            return EXIT_OK
    rec = just_finite_transform(p)
    pairs = [{"relator_index": pr.relator_index, "relator": format_word(p.relators[pr.relator_index]),
              "generator": pr.generator.name, "output_indices": list(pr.output_indices)}
             for pr in rec.pairs]
    if cfg.format == "json":
        _emit(cfg, {"presentation": print_presentation(rec.output), "cyclic_shortcut": False,
                    "pairs": pairs}, "")
    else:
        print(print_presentation(rec.output))
        for pr in pairs:
            print(f"# relator {pr['relator_index']} ({pr['relator']}) -> generator "
                  f"{pr['generator']}, relators {pr['output_indices'][0]} and "
                  f"{pr['output_indices'][1]}", file=sys.stderr)
    return EXIT_OK


def cmd_order(args, cfg: CliConfig) -> int:
    p = load(args.file)
    order = group_order(p, cfg.max_cosets)
    if isinstance(order, Overflow):
        _emit(cfg, {"order": None, "overflow": True, "max_cosets": cfg.max_cosets},
              f"overflow: {order} (the group may be infinite or need a larger budget)")
        return EXIT_UNKNOWN
    _emit(cfg, {"order": order, "overflow": False, "max_cosets": cfg.max_cosets}, str(order))
    return EXIT_OK


def cmd_abelian(args, cfg: CliConfig) -> int:
    inv = abelian_invariants(load(args.file))
    _emit(cfg, {"torsion": list(inv.torsion), "free_rank": inv.free_rank}, str(inv))
    return EXIT_OK


def cmd_low_index(args, cfg: CliConfig) -> int:
    p = load(args.file)
    records = low_index_subgroups(p, cfg.max_index)
    rows = []
    lines = []
    for rec in records:
        inv = abelian_invariants(rec.presentation_of_subgroup)
        gens = [format_word(w) for w in rec.table.subgroup]
        rows.append({"index": rec.index, "subgroup_generators": gens,
                     "torsion": list(inv.torsion), "free_rank": inv.free_rank,
                     "coset_table": rec.table.table.tolist()})
        lines.append(f"index {rec.index}: <{', '.join(gens) or '1'}>  abelianization {inv}")
    _emit(cfg, {"max_index": cfg.max_index, "subgroups": rows}, "\n".join(lines))
    return EXIT_OK


def cmd_certify_infinite(args, cfg: CliConfig) -> int:
    cert = certify_infinite(load(args.file), cfg.budget)
    payload = {"certificate_kind": cert.kind, "witness": cert.witness()}
    _emit(cfg, payload, f"{cert.kind}: {json.dumps(cert.witness())}")
    return EXIT_UNKNOWN if cert.kind == "unknown" else EXIT_OK


def cmd_verify_same(args, cfg: CliConfig) -> int:
    p, q = load(args.file), load(args.other)
    try:
        result = verify_presents_same_group(p, q, cfg.budget)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    word = {True: "true", False: "false", None: "unknown"}[result]
    _emit(cfg, {"same_group": result}, word)
    return EXIT_UNKNOWN if result is None else EXIT_OK


def render_report(rep: Report) -> str:
    d = rep.as_dict()
    lines = [f"presentation: {d['presentation']}",
             f"deficiency:   {d['deficiency']}",
             f"order:        {d['order'] if d['order'] is not None else 'unknown'}",
             "irredundancy:"]
    for v in d["irredundancy"]:
        lines.append(f"  [{v['relator_index']}] {v['status']} ({v['reason']})")
    lines.append("deletions:")
    for v in d["verdicts"]:
        w = v["witness"]
        detail = ", ".join(f"{k}={val}" for k, val in w.items()
                           if k not in ("coset_table", "h_r_certificate"))
        lines.append(f"  [{v['relator_index']}] {v['relator']}: {v['certificate_kind']} ({detail})")
    for note in d["notes"]:
        lines.append(f"note: {note}")
    lines.append(f"summary: {d['summary']}")
    return "\n".join(lines)


def cmd_report(args, cfg: CliConfig) -> int:
    p = load(args.file)
    rep = just_finite_report(p, cfg.budget)
    _emit(cfg, rep.as_dict(), render_report(rep))
    return EXIT_UNKNOWN if rep.summary == INCONCLUSIVE else EXIT_OK


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


class _Parser(argparse.ArgumentParser):
    # argparse's own exit status 2 would read as "unknown"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--max-cosets", type=_positive, default=DEFAULT_MAX_COSETS)
    common.add_argument("--max-index", type=_positive, default=DEFAULT_MAX_INDEX)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cyclic-shortcut", action="store_true",
                        help="transform: emit <x | x^n> for finite cyclic inputs")

    parser = _Parser(prog="fpgroup", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    commands = {
        "transform": (cmd_transform, "replace each relator by a Neumann pair"),
        "order": (cmd_order, "group order by coset enumeration"),
        "abelian": (cmd_abelian, "abelian invariants"),
        "low-index": (cmd_low_index, "conjugacy classes of low-index subgroups"),
        "certify-infinite": (cmd_certify_infinite, "search for an infiniteness certificate"),
        "verify-same": (cmd_verify_same, "check that a second presentation presents the same group"),
        "report": (cmd_report, "certify every single-relator deletion"),
    }
    for name, (fn, help_text) in commands.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("file", help="presentation file, or - for stdin")
        if name == "verify-same":
            sp.add_argument("other", help="presentation whose generators extend FILE's")
        sp.set_defaults(func=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = CliConfig(args.max_cosets, args.max_index, args.format, args.cyclic_shortcut)
    try:
        return args.func(args, cfg)
    except InputError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
