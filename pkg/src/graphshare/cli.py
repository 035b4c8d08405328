"""Command-line surface: solve, play, verify, gen, adversary.

Every command is deterministic given its flags, seeds, and input files;
randomized commands require an explicit ``--seed``.  Exit codes: 0 for
success or a passing suite, 1 for a failing suite, 2 for usage or parse
errors, 3 when the forbid policy aborts on a tie.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import IO

from .adversary import (
    GraphShape,
    alternate_optimize,
    hill_climb,
    tree_shapes,
)
from .core import (
    GameState,
    GraphShareError,
    Instance,
    Outcome,
    Player,
    TiePolicy,
    TieEncounteredError,
    legal_moves,
    mask_to_set,
    mover,
    play_out,
)
from .generators import gen_cycle7_family, gen_random_connected, gen_random_tree
from .instance_io import format_instance, parse_instance
from .solve import SOLVE_WARN_VERTICES, canonical_strategy, format_line, solve
from .verify import UnknownSuiteError, run_suite

EXIT_OK = 0
EXIT_SUITE_FAIL = 1
EXIT_USAGE = 2
EXIT_TIE = 3

_POLICIES = {
    "forbid": TiePolicy.FORBID,
    "first": TiePolicy.FIRST_MOVES,
    "second": TiePolicy.SECOND_MOVES,
}


class _UsageError(Exception):
    pass


def _read_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_instance(handle.read())


def _frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# solve


def _cmd_solve(args: argparse.Namespace, out: IO[str]) -> int:
    instance = _read_instance(args.file)
    if instance.vertex_count > SOLVE_WARN_VERTICES:
        print(
            f"warning: {instance.vertex_count} vertices; exact solving "
            "may take a while",
            file=sys.stderr,
        )
    policy = _POLICIES[args.policy]
    report = solve(instance, policy)
    if args.start is None:
        out.write(report.render())
        return EXIT_OK
    if not 0 <= args.start < instance.vertex_count:
        raise _UsageError(f"start vertex {args.start} does not exist")
    entry = report.per_start[args.start]
    out.write(f"start.{entry.start}.value={_frac(entry.value)}\n")
    out.write(f"start.{entry.start}.line={format_line(entry.line)}\n")
    out.write(f"policy={policy.value}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# play


class _InputEnded(Exception):
    pass


def run_play(
    instance: Instance,
    policy: TiePolicy,
    human_side: Player,
    input_stream: IO[str],
    output_stream: IO[str],
) -> Outcome | None:
    """Interactive game on text streams; the engine plays the other side.

    The human is prompted whenever the rules make them the mover;
    illegal entries re-prompt.  Returns the final Outcome, or None when
    the input ends mid-game.  The game loop itself is ``play_out``: this
    function only supplies strategies and narration.
    """
    total = instance.total_weight
    engine = canonical_strategy(instance, policy)
    optimal = solve(instance, policy).value

    def show_state(state: GameState) -> None:
        f, s = state.totals(instance)
        first_set = ",".join(map(str, sorted(mask_to_set(state.first_mask)))) or "-"
        second_set = ",".join(map(str, sorted(mask_to_set(state.second_mask)))) or "-"
        frontier = " ".join(map(str, sorted(legal_moves(instance, state))))
        output_stream.write(
            f"first[{first_set}]={f}/{total} "
            f"second[{second_set}]={s}/{total}\n"
        )
        output_stream.write(f"frontier: {frontier}\n")

    def human(inst: Instance, state: GameState) -> int:
        show_state(state)
        legal = legal_moves(inst, state)
        while True:
            output_stream.write(f"your move ({human_side.value}): ")
            output_stream.flush()
            line = input_stream.readline()
            if not line:
                raise _InputEnded
            token = line.strip()
            try:
                vertex = int(token)
            except ValueError:
                output_stream.write(f"not a vertex id: {token!r}\n")
                continue
            if vertex not in legal:
                takeable = " ".join(map(str, sorted(legal)))
                output_stream.write(
                    f"vertex {vertex} is not takeable now; takeable: {takeable}\n"
                )
                continue
            return vertex

    def engine_move(inst: Instance, state: GameState) -> int:
        vertex = engine(inst, state)
        side = mover(inst, state, policy)
        output_stream.write(
            f"engine ({side.value}) takes {vertex} "
            f"(weight {inst.weights[vertex]})\n"
        )
        return vertex

    strategies = {human_side: human}
    other = Player.SECOND if human_side is Player.FIRST else Player.FIRST
    strategies[other] = engine_move
    try:
        outcome = play_out(
            instance, policy, strategies[Player.FIRST], strategies[Player.SECOND]
        )
    except _InputEnded:
        output_stream.write("input ended; game aborted\n")
        return None
    except TieEncounteredError:
        output_stream.write(
            "totals tied: the forbid policy cannot continue; game aborted\n"
        )
        raise
    f_set = ",".join(map(str, sorted(outcome.first_set))) or "-"
    s_set = ",".join(map(str, sorted(outcome.second_set))) or "-"
    output_stream.write(
        f"final: first[{f_set}]={_frac(outcome.first_value)} "
        f"second[{s_set}]={_frac(1 - outcome.first_value)}\n"
    )
    human_score = (
        outcome.first_value
        if human_side is Player.FIRST
        else 1 - outcome.first_value
    )
    engine_optimal = optimal if human_side is Player.FIRST else 1 - optimal
    relation = (
        "matches"
        if human_score == engine_optimal
        else ("beats" if human_score > engine_optimal else "falls short of")
    )
    output_stream.write(
        f"your share {_frac(human_score)} {relation} the optimal "
        f"{_frac(engine_optimal)} for your side\n"
    )
    return outcome


def _cmd_play(args: argparse.Namespace, out: IO[str]) -> int:
    instance = _read_instance(args.file)
    policy = _POLICIES[args.policy]
    side = Player.FIRST if args.human == "first" else Player.SECOND
    outcome = run_play(instance, policy, side, sys.stdin, out)
    return EXIT_OK if outcome is not None else EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _parse_param(token: str):
    if "=" not in token:
        raise _UsageError(f"--param needs key=value, got {token!r}")
    key, text = token.split("=", 1)
    if "/" in text:
        num, den = text.split("/", 1)
        return key, Fraction(int(num), int(den))
    if "," in text:
        return key, tuple(int(part) for part in text.split(","))
    try:
        return key, int(text)
    except ValueError:
        raise _UsageError(f"cannot parse --param value {text!r}") from None


def _cmd_verify(args: argparse.Namespace, out: IO[str]) -> int:
    params = dict(_parse_param(token) for token in args.param or [])
    report = run_suite(args.suite, seed=args.seed, size_params=params or None)
    out.write(report.render())
    return EXIT_OK if report.passed else EXIT_SUITE_FAIL


# ---------------------------------------------------------------------------
# gen


def _parse_kind(kind: str, seed: int | None) -> Instance:
    name, _, rest = kind.partition(":")
    try:
        if name == "cycle7":
            return gen_cycle7_family(int(rest))
        if name == "tree":
            if seed is None:
                raise _UsageError("--seed is required for kind tree")
            return gen_random_tree(int(rest), seed, 10**9)
        if name == "connected":
            n_text, extra_text = rest.split(",", 1)
            if seed is None:
                raise _UsageError("--seed is required for kind connected")
            return gen_random_connected(int(n_text), int(extra_text), seed, 10**9)
        if name == "edge":
            a_text, b_text = rest.split(",", 1)
            return Instance(weights=(int(a_text), int(b_text)), edges=((0, 1),))
    except (ValueError, TypeError) as exc:
        raise _UsageError(f"bad --kind argument {kind!r}: {exc}") from exc
    raise _UsageError(
        f"unknown kind {name!r}; expected cycle7:<M>, tree:<n>, "
        "connected:<n>,<extra>, or edge:<a>,<b>"
    )


def _cmd_gen(args: argparse.Namespace, out: IO[str]) -> int:
    instance = _parse_kind(args.kind, args.seed)
    text = format_instance(instance)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        out.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# adversary


def _parse_shapes(token: str) -> list[GraphShape]:
    name, _, rest = token.partition(":")
    try:
        if name == "cycle7":
            return [GraphShape.cycle(7)]
        if name == "cycle":
            return [GraphShape.cycle(int(rest))]
        if name == "edge":
            return [GraphShape.single_edge()]
        if name == "tree-enum":
            return list(tree_shapes(int(rest)))
    except (ValueError, TypeError) as exc:
        raise _UsageError(f"bad --shape argument {token!r}: {exc}") from exc
    raise _UsageError(
        f"unknown shape {token!r}; expected cycle7, cycle:<n>, "
        "tree-enum:<n>, or edge"
    )


def _cmd_adversary(args: argparse.Namespace, out: IO[str]) -> int:
    shapes = _parse_shapes(args.shape)
    policy = _POLICIES[args.policy]
    if args.method == "hill" and args.seed is None:
        raise _UsageError("--seed is required for method hill")
    best = None
    for index, shape in enumerate(shapes):
        if args.method == "alt":
            iters = args.iters if args.iters is not None else 40
            result = alternate_optimize(shape, policy, max_iters=iters)
            candidate = (result.value, index, result.instance, result.stop_reason)
        else:
            iters = args.iters if args.iters is not None else 2000
            result = hill_climb(shape, policy, seed=args.seed, iters=iters)
            candidate = (result.value, index, result.instance, result.stop_reason)
        if best is None or candidate[:2] < best[:2]:
            best = candidate
    assert best is not None
    value, _index, instance, stop_reason = best
    out.write(format_instance(instance))
    out.write(f"value={_frac(value)}\n")
    out.write(f"method={args.method}\n")
    out.write(f"policy={policy.value}\n")
    out.write(f"shape={args.shape}\n")
    out.write(f"shapes_searched={len(shapes)}\n")
    out.write(f"stop_reason={stop_reason}\n")
    if args.seed is not None:
        out.write(f"seed={args.seed}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphshare",
        description="Exact solver and verifier for the concurrent "
        "graph sharing game.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file exactly")
    p_solve.add_argument("file")
    p_solve.add_argument("--policy", choices=sorted(_POLICIES), default="forbid")
    p_solve.add_argument("--start", type=int, default=None)

    p_play = sub.add_parser("play", help="play against the engine")
    p_play.add_argument("file")
    p_play.add_argument("--human", choices=("first", "second"), required=True)
    p_play.add_argument("--policy", choices=sorted(_POLICIES), default="forbid")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", required=True)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--param", action="append", metavar="K=V")

    p_gen = sub.add_parser("gen", help="generate an instance")
    p_gen.add_argument("--kind", required=True)
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.add_argument("-o", "--output", default=None)

    p_adv = sub.add_parser("adversary", help="search for worst-case weights")
    p_adv.add_argument("--shape", required=True)
    p_adv.add_argument("--policy", choices=sorted(_POLICIES), default="forbid")
    p_adv.add_argument("--method", choices=("alt", "hill"), default="alt")
    p_adv.add_argument("--seed", type=int, default=None)
    p_adv.add_argument("--iters", type=int, default=None)

    return parser


_COMMANDS = {
    "solve": _cmd_solve,
    "play": _cmd_play,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
    "adversary": _cmd_adversary,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, sys.stdout)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownSuiteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TieEncounteredError:
        print("aborted: totals tied under the forbid policy", file=sys.stderr)
        return EXIT_TIE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphShareError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
