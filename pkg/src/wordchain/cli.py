"""Command-line interface.

One binary, eleven subcommands, deterministic output: every stochastic
command derives its generators from (--seed, fixed labels), so identical
invocations produce identical bytes and adding new commands never perturbs
existing streams.  ``--jobs`` only sets the worker-pool size for Monte
Carlo replicas; the replica split is fixed, so results do not depend on it.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import boundary as boundary_mod
from . import bridges, kernels, orders, plackett_luce, verify, words
from .errors import CapExceededError, WordchainError
from .measures import (
    CanonicalPair,
    Exponential,
    MCEstimate,
    StepMeasure,
    empirical_pair,
    format_fraction,
    parse_fraction,
    pattern_prob_exact,
    pattern_prob_mc,
)
from .rng import derive_rng

MC_REPLICAS = 8  # fixed fan-out for Monte Carlo commands, independent of --jobs


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a command's output bytes.

    Two invocations with equal configs emit identical bytes; ``jobs`` is
    excluded from that contract's inputs because it only sizes the pool.
    """

    seed: int = 0
    trials: int = 0
    depth: int = 0
    jobs: int = 1
    fmt: str = "text"

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            seed=getattr(args, "seed", 0) & 0xFFFFFFFFFFFFFFFF,
            trials=getattr(args, "trials", 0),
            depth=getattr(args, "depth", 0),
            jobs=getattr(args, "jobs", 1),
            fmt=getattr(args, "format", None) or getattr(args, "emit", None) or "text",
        )


def _sig6(x: float) -> float:
    return float(f"{x:.6g}")


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(args, payload: dict) -> None:
    _emit(args, json.dumps(payload, indent=2, sort_keys=True))


def _format_path(path: list[str], fmt: str, seed: int) -> str:
    if fmt == "csv":
        lines = ["step,word"] + [f"{k},{w}" for k, w in enumerate(path)]
        return "\n".join(lines)
    if fmt == "json":
        return json.dumps({"seed": seed, "path": path}, sort_keys=True)
    return "\n".join(f"{k} {words.display_word(w)}" for k, w in enumerate(path))


def _load_pair(path: str) -> CanonicalPair:
    with open(path, encoding="utf-8") as fh:
        return CanonicalPair.from_json(json.load(fh))


def _parse_measure_spec(spec: str):
    """"exp:RATE" for an exponential law, otherwise a step-measure JSON file."""
    if spec.startswith("exp:"):
        return Exponential(parse_fraction(spec.split(":", 1)[1]))
    with open(spec, encoding="utf-8") as fh:
        return StepMeasure.from_json(json.load(fh))


def _order_sources(args):
    if args.pair:
        pair = _load_pair(args.pair)
        return pair.mu, pair.nu
    if not (args.zeta and args.eta):
        raise WordchainError("provide either --pair FILE or both --zeta and --eta")
    return _parse_measure_spec(args.zeta), _parse_measure_spec(args.eta)


def _replica_counts(total: int) -> list[int]:
    per = total // MC_REPLICAS
    counts = [per] * MC_REPLICAS
    for i in range(total - per * MC_REPLICAS):
        counts[i] += 1
    return [c for c in counts if c]


def _pattern_replica(task: tuple) -> int:
    """Worker for pattern-prob replicas; returns the replica's hit count."""
    pair, word, seed, label, count = task
    est = pattern_prob_mc(pair, word, count, derive_rng(seed, label))
    return round(est.value * count)


def _order_replica(task: tuple) -> list:
    """Worker for orders/moments replicas; top-level so pools can pickle it."""
    a_source, b_source, seed, label, mode, x, y, depth, order_n, count = task
    sampler = orders.OrderSampler(a_source, b_source, derive_rng(seed, label))
    out = []
    for _ in range(count):
        if mode == "moment":
            run = sampler.run(order_n + 1)
            va, vb = run.values_a, run.values_b
            mu_prod = nu_prod = 1
            for k in range(order_n):
                mu_prod *= (va[k] < va[order_n]) + (vb[k] < va[order_n])
                nu_prod *= (va[k] < vb[order_n]) + (vb[k] < vb[order_n])
            out.append((0.5**order_n * mu_prod, 0.5**order_n * nu_prod))
        else:
            run = sampler.run(depth)
            out.append(run.d_hat(x, y) if mode == "d" else run.f_hat(x))
    return out


def _map_replicas(worker, tasks: list[tuple], jobs: int) -> list:
    """Run replica tasks, optionally on a process pool; order is preserved."""
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, tasks))
    return [worker(t) for t in tasks]


def _run_replicas(tasks: list[tuple], jobs: int) -> list:
    return [item for chunk in _map_replicas(_order_replica, tasks, jobs) for item in chunk]


def _mean_stderr(samples: list[float]) -> MCEstimate:
    n = len(samples)
    mean = sum(samples) / n
    var = sum((s - mean) ** 2 for s in samples) / n
    return MCEstimate(mean, (var / n) ** 0.5, n)


def _cmd_subword(args, config: RunConfig) -> int:
    _emit(args, str(words.subword_count(args.word, args.subword)))
    return 0


def _cmd_kernel(args, config: RunConfig) -> int:
    fns = {
        "one-step": kernels.one_step_prob,
        "multi-step": kernels.multi_step_prob,
        "dm": kernels.dm_kernel,
        "backward": kernels.backward_prob,
    }
    _emit(args, format_fraction(fns[args.quantity](args.source, args.target)))
    return 0


def _cmd_simulate(args, config: RunConfig) -> int:
    path = bridges.simulate_forward(args.steps, derive_rng(config.seed, "simulate"))
    _emit(args, _format_path(path, config.fmt, config.seed))
    return 0


def _cmd_bridge(args, config: RunConfig) -> int:
    path = bridges.sample_finite_bridge(args.target, derive_rng(config.seed, "bridge"))
    _emit(args, _format_path(path, config.fmt, config.seed))
    return 0


def _cmd_infinite_bridge(args, config: RunConfig) -> int:
    pair = _load_pair(args.pair)
    bridge = bridges.InfiniteBridge(pair, derive_rng(config.seed, "infinite-bridge"))
    bridge.extend_to(args.steps)
    _emit(args, _format_path(bridge.words, config.fmt, config.seed))
    return 0


def _cmd_pattern_prob(args, config: RunConfig) -> int:
    pair = empirical_pair(args.word_pair) if args.word_pair else _load_pair(args.pair)
    if config.trials:
        tasks = [
            (pair, args.word, config.seed, f"pattern-prob/{i}", count)
            for i, count in enumerate(_replica_counts(config.trials))
        ]
        hits = sum(_map_replicas(_pattern_replica, tasks, config.jobs))
        p = hits / config.trials
        stderr = (p * (1 - p) / config.trials) ** 0.5
        _emit_json(
            args,
            {
                "word": args.word,
                "estimate": _sig6(p),
                "stderr": _sig6(stderr),
                "trials": config.trials,
            },
        )
    else:
        _emit(args, format_fraction(pattern_prob_exact(pair, args.word)))
    return 0


def _cmd_orders(args, config: RunConfig) -> int:
    a_source, b_source = _order_sources(args)
    x = orders.LabeledLetter.parse(args.x)
    y = orders.LabeledLetter.parse(args.y) if args.y else None
    if args.stat == "d" and y is None:
        raise WordchainError("--stat d needs both --x and --y")
    if args.stat == "d" and x == y:
        estimate = MCEstimate(0.0, 0.0, 0)
    else:
        need = max(x.index, y.index if y else 0)
        if config.depth < need:
            raise WordchainError(f"--depth must be at least the largest letter index {need}")
        tasks = [
            (a_source, b_source, config.seed, f"orders/{i}", args.stat, x, y, config.depth, 0, c)
            for i, c in enumerate(_replica_counts(config.trials))
        ]
        estimate = _mean_stderr(_run_replicas(tasks, config.jobs))
    payload = {
        "stat": args.stat,
        "x": str(x),
        "estimate": _sig6(estimate.value),
        "stderr": _sig6(estimate.stderr),
        "depth": config.depth,
        "trials": config.trials,
    }
    if y is not None:
        payload["y"] = str(y)
    _emit_json(args, payload)
    return 0


def _cmd_moments(args, config: RunConfig) -> int:
    a_source, b_source = _order_sources(args)
    tasks = [
        (a_source, b_source, config.seed, f"moments/{i}", "moment", None, None, 0, args.order, c)
        for i, c in enumerate(_replica_counts(config.trials))
    ]
    pairs = _run_replicas(tasks, config.jobs)
    mu_est = _mean_stderr([p[0] for p in pairs])
    nu_est = _mean_stderr([p[1] for p in pairs])
    _emit_json(
        args,
        {
            "order": args.order,
            "mu_moment": _sig6(mu_est.value),
            "mu_stderr": _sig6(mu_est.stderr),
            "nu_moment": _sig6(nu_est.value),
            "nu_stderr": _sig6(nu_est.stderr),
            "trials": config.trials,
        },
    )
    return 0


def _cmd_plackett_luce(args, config: RunConfig) -> int:
    rates = plackett_luce.RatePair(parse_fraction(args.alpha), parse_fraction(args.beta))
    needed = {"prob": 1, "harmonic": 1, "transition": 2, "sample": 0}[args.action]
    if len(args.words) != needed:
        raise WordchainError(f"{args.action} takes {needed} word argument(s)")
    if args.action == "prob":
        _emit(args, format_fraction(plackett_luce.pl_word_prob(rates, args.words[0])))
    elif args.action == "harmonic":
        _emit(args, format_fraction(plackett_luce.pl_harmonic(rates, args.words[0])))
    elif args.action == "transition":
        _emit(args, format_fraction(plackett_luce.pl_transition(rates, *args.words)))
    else:
        rng = derive_rng(config.seed, "plackett-luce")
        _emit(args, plackett_luce.pl_sample(rates, args.size, rng, method=args.method))
    return 0


def _cmd_boundary(args, config: RunConfig) -> int:
    with open(args.seq, encoding="utf-8") as fh:
        seq = [line.strip() for line in fh if line.strip()]
    pair = _load_pair(args.pair)
    report = boundary_mod.convergence_report(seq, pair, args.mmax)
    _emit_json(args, report.to_json())
    return 0


def _cmd_verify(args, config: RunConfig) -> int:
    results = verify.run_verification()
    lines = []
    failed = 0
    total = 0
    for res in results:
        status = "OK" if res.ok else "FAIL"
        lines.append(f"{res.name}: {res.checked} identities: {status}")
        total += res.checked
        if not res.ok:
            failed += 1
            lines.extend(f"  {failure}" for failure in res.failures)
    lines.append(
        f"{len(results)} identity families, {total} identities checked, "
        f"{failed} families failing"
    )
    _emit(args, "\n".join(lines))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wordchain",
        description="Simulate and exactly verify the growing-word Markov chain, "
        "its bridges, boundary kernels, and the Plackett-Luce special case.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed (64-bit)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for MC replicas")

    p = sub.add_parser("subword", parents=[common], help="count subword embeddings")
    p.add_argument("word")
    p.add_argument("subword")
    p.set_defaults(fn=_cmd_subword)

    p = sub.add_parser("kernel", parents=[common], help="print an exact kernel value")
    p.add_argument("quantity", choices=["one-step", "multi-step", "dm", "backward"])
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(fn=_cmd_kernel)

    p = sub.add_parser("simulate", parents=[common], help="run the base chain forward")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("bridge", parents=[common], help="sample a bridge to a target word")
    p.add_argument("--target", required=True)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(fn=_cmd_bridge)

    p = sub.add_parser(
        "infinite-bridge", parents=[common], help="simulate the h-transform of a measure pair"
    )
    p.add_argument("--pair", required=True, help="canonical pair JSON file")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--emit", choices=["csv", "json", "text"], default="csv")
    p.set_defaults(fn=_cmd_infinite_bridge)

    p = sub.add_parser(
        "pattern-prob", parents=[common], help="interleaving-pattern probability of a word"
    )
    p.add_argument("--pair", help="canonical pair JSON file")
    p.add_argument("--word-pair", help="balanced word whose empirical pair to use")
    p.add_argument("--word", required=True)
    p.add_argument("--trials", type=int, default=0, help="Monte Carlo trials (0 = exact)")
    p.set_defaults(fn=_cmd_pattern_prob)

    p = sub.add_parser("orders", parents=[common], help="estimate the order metric d or map f")
    p.add_argument("--stat", choices=["d", "f"], required=True)
    p.add_argument("--x", required=True, help="labeled letter, e.g. a1")
    p.add_argument("--y", help="labeled letter (for --stat d)")
    p.add_argument("--depth", type=int, default=500)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--pair", "--source", dest="pair", help="canonical pair JSON file")
    p.add_argument("--zeta", help='measure spec: "exp:RATE" or step-measure JSON path')
    p.add_argument("--eta", help='measure spec: "exp:RATE" or step-measure JSON path')
    p.set_defaults(fn=_cmd_orders)

    p = sub.add_parser("moments", parents=[common], help="estimate canonical-pair moments")
    p.add_argument("--order", type=int, required=True, help="moment order n")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--pair", "--source", dest="pair", help="canonical pair JSON file")
    p.add_argument("--zeta", help='measure spec: "exp:RATE" or step-measure JSON path')
    p.add_argument("--eta", help='measure spec: "exp:RATE" or step-measure JSON path')
    p.set_defaults(fn=_cmd_moments)

    p = sub.add_parser(
        "plackett-luce", parents=[common], help="exponential-pair bridge closed forms"
    )
    p.add_argument("--alpha", required=True, help="rate for a-letters, e.g. 2 or 3/2")
    p.add_argument("--beta", required=True, help="rate for b-letters")
    p.add_argument("action", choices=["prob", "sample", "harmonic", "transition"])
    p.add_argument("words", nargs="*", help="word arguments for prob/harmonic/transition")
    p.add_argument("--size", type=int, default=1, help="word size for sample")
    p.add_argument("--method", choices=["sequential", "sort"], default="sequential")
    p.set_defaults(fn=_cmd_plackett_luce)

    p = sub.add_parser("boundary", parents=[common], help="convergence report for a sequence")
    p.add_argument("--seq", required=True, help="file with one word per line")
    p.add_argument("--pair", required=True, help="canonical pair JSON file")
    p.add_argument("--mmax", type=int, default=2)
    p.set_defaults(fn=_cmd_boundary)

    p = sub.add_parser("verify", parents=[common], help="run the exact-identity suite")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig.from_args(args)
    try:
        return args.fn(args, config)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (WordchainError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
