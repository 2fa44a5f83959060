"""``lieinv`` command line: Hall words, invariant tables, verification, Witt dimensions.

Exit status: 0 success, 1 a verification or consistency check failed,
2 bad configuration or input, 3 two primes disagreed on a rank.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import shutil
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .hall import Alphabet, HallError, LiePoly, format_word, hall_words, parse_poly
from .invariants import (
    BackendDisagreement,
    action_matrix,
    InvariantBasis,
    InvariantError,
    RATIONAL_COLUMN_LIMIT,
    cached_invariants,
    nonprimitive_basis,
    parse_backend,
    primitive_split,
    verify_invariant,
)
from .linalg.modular import CONFIRM_PRIME, DEFAULT_PRIME, is_prime
from .reps import BUILTIN_NAMES, RepError, RepSpec, load_rep, weight, weight_basis
from .witt import free_lie_dims, nonprimitive_dims, rep_generators

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_DISAGREE = 0, 1, 2, 3

ENV_CACHE = "LIEINV_CACHE_DIR"
ENV_PRIMES = "LIEINV_PRIMES"
ENV_THREADS = "LIEINV_THREADS"


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# argument parsing helpers


def parse_degrees(text: str) -> list[int]:
    """``"12"``, ``"1..12"``, ``"2..14:2"`` or a comma list of those."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(\d+)\.\.(\d+)(?::(\d+))?", part)
        if m:
            lo, hi, step = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
            if lo > hi or step < 1:
                raise ConfigError(f"bad degree range {part!r}")
            out.extend(range(lo, hi + 1, step))
        elif part.isdigit():
            out.append(int(part))
        else:
            raise ConfigError(f"bad degree {part!r}")
    if any(d < 1 for d in out):
        raise ConfigError("degrees must be at least 1")
    return sorted(set(out))


def parse_primes(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        primes = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"bad prime list {text!r}") from None
    for p in primes:
        if not is_prime(p):
            raise ConfigError(f"{p} is not prime")
    return primes


def parse_delta(text: str) -> Fraction:
    try:
        d = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"bad LLL parameter {text!r}") from None
    if not Fraction(1, 4) < d <= 1:
        raise ConfigError("LLL parameter must lie in (1/4, 1]")
    return d


def parse_weight(text: str, rank: int) -> tuple[int, ...]:
    try:
        w = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"bad weight {text!r}") from None
    if len(w) != rank:
        raise ConfigError(f"weight {text!r} needs {rank} coordinate(s)")
    return w


def parse_weights(text: str, rank: int) -> list[tuple[int, ...]]:
    """Rank 1: ``"0,2"``. Higher rank: ``"0,0;2,-1"``."""
    if rank == 1:
        return [parse_weight(x, 1) for x in text.split(",")]
    return [parse_weight(x, rank) for x in text.split(";")]


def parse_gens(text: str) -> dict[tuple[int, ...], int]:
    """``"(1):3"``, ``"(1,1):1,(1,-1):1"`` or plain ``"1:3"``."""
    out: dict[tuple[int, ...], int] = {}
    pos = 0
    pat = re.compile(r"\s*(?:\(([^)]*)\)|(\d+))\s*:\s*(\d+)\s*(?:,|$)")
    while pos < len(text):
        m = pat.match(text, pos)
        if not m:
            raise ConfigError(f"bad generator spec near {text[pos:]!r}")
        inner = m.group(1) if m.group(1) is not None else m.group(2)
        try:
            deg = tuple(int(x) for x in inner.split(","))
        except ValueError:
            raise ConfigError(f"bad multidegree ({inner})") from None
        if not deg or deg[0] < 1:
            raise ConfigError(f"multidegree ({inner}) must have positive total degree")
        out[deg] = out.get(deg, 0) + int(m.group(3))
        pos = m.end()
    if len({len(k) for k in out}) > 1:
        raise ConfigError("generator multidegrees have different lengths")
    return out


def parse_primitives(text: str) -> dict[int, int]:
    """``"2:1,6:1,10:4"``, or a file holding that text (``@path`` or an existing path)."""
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    elif Path(text).is_file():
        text = Path(text).read_text()
    out: dict[int, int] = {}
    for part in re.split(r"[,\s]+", text.strip()):
        if not part:
            continue
        m = re.fullmatch(r"(\d+):(\d+)", part)
        if not m:
            raise ConfigError(f"bad primitive count {part!r}; expected degree:count")
        out[int(m.group(1))] = out.get(int(m.group(1)), 0) + int(m.group(2))
    return out


def weight_label(w: Sequence[int]) -> str:
    return f"w={w[0]}" if len(w) == 1 else "w=(" + ",".join(map(str, w)) + ")"


# --------------------------------------------------------------------------
# invariant pipeline


@dataclass
class DegreeRecord:
    degree: int
    weight_dims: dict[str, int]
    basis: InvariantBasis
    nonprimitive: int
    nonprimitive_source: str
    primitive_indices: tuple[int, ...] | None
    verified: bool
    failures: list[str] = field(default_factory=list)
    cache_hit: bool = False

    @property
    def invariants(self) -> int:
        return self.basis.dimension

    @property
    def primitive(self) -> int:
        return self.invariants - self.nonprimitive

    def to_json(self, rep: RepSpec, emit_basis: bool, timings: bool) -> dict:
        b = self.basis
        out = {
            "degree": self.degree,
            "weight_dims": self.weight_dims,
            "invariants": self.invariants,
            "nonprimitive": self.nonprimitive,
            "nonprimitive_source": self.nonprimitive_source,
            "primitive": self.primitive,
            "backend": b.backend,
            "primes": list(b.primes),
            "matrix": [b.nrows, b.ncols],
            "rank": b.rank,
            "block_ranks": b.block_ranks,
            "surjective": b.surjective,
            "verified": self.verified,
            "norms": b.norms if b.exact else None,
            "term_counts": b.term_counts,
        }
        if self.primitive_indices is not None:
            out["primitive_indices"] = list(self.primitive_indices)
        if self.failures:
            out["failures"] = self.failures
        if emit_basis:
            full = b.to_json(rep.alphabet)
            out["basis"] = full.get("polys") or full["vectors"]
            if not b.exact:
                out["basis_words"] = full["words"]
        if timings:
            out["seconds"] = round(b.seconds, 3)
            out["cache_hit"] = self.cache_hit
        return out


def _check_basis(rep: RepSpec, basis: InvariantBasis) -> list[str]:
    """Every basis element must be killed by every generator (mod p for modular bases)."""
    failures = []
    if basis.exact:
        for i, p in enumerate(basis.polys):
            cert = verify_invariant(rep, p)
            if not cert.passed:
                failures.append(f"element {i}: {cert.describe(rep.alphabet)}")
    elif basis.vectors:
        p = basis.primes[0]
        a = action_matrix(rep, basis.degree).stacked
        if a.entries:
            ij = np.array(list(a.entries.keys()), dtype=np.int64)
            vals = np.array(list(a.entries.values()), dtype=np.int64)
            vecs = np.array(basis.vectors, dtype=np.int64)
            prod = np.zeros((a.nrows, len(basis.vectors)), dtype=np.int64)
            np.add.at(prod, ij[:, 0], (vals[:, None] * vecs[:, ij[:, 1]].T) % p)
            bad = np.flatnonzero((prod % p).any(axis=0))
            failures.extend(f"element {int(i)}: nonzero image modulo {p}" for i in bad)
    if not basis.surjective:
        failures.append(f"raising operators not surjective: ranks {basis.block_ranks} vs rows {basis.block_rows}")
    return failures


def _compute_one(args):
    rep, degree, backend, primes, delta, cache_dir = args
    return cached_invariants(rep, degree, backend, cache_dir, primes=primes, delta=delta)


def run_invariants(
    rep: RepSpec,
    degrees: Sequence[int],
    backend: str = "auto",
    primes: Sequence[int] = (),
    delta: Fraction = Fraction(3, 4),
    cache_dir: str | Path | None = None,
    threads: int = 1,
    split: bool = True,
) -> list[DegreeRecord]:
    """Compute, verify and split every requested degree (lower degrees are filled in for the split)."""
    parse_backend(backend)
    wanted = sorted(set(degrees))
    todo = list(range(1, max(wanted) + 1)) if split else wanted
    jobs = [(rep, d, backend, tuple(primes), delta, cache_dir) for d in todo]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_compute_one, jobs))
    else:
        results = [_compute_one(j) for j in jobs]
    bases = {d: r for d, r in zip(todo, results)}

    records = []
    exact: dict[int, InvariantBasis] = {d: b for d, (b, _) in bases.items() if b.exact}
    prims: dict[int, list[LiePoly] | None] = {}
    prim_counts: dict[int, int] = {}
    inv_degrees: list[int] = []

    def exact_basis(e: int) -> InvariantBasis | None:
        if e not in exact:
            if bases[e][0].ncols > RATIONAL_COLUMN_LIMIT:
                return None
            exact[e] = cached_invariants(rep, e, "rational", cache_dir)[0]
        return exact[e]

    def lower_primitives(d: int) -> dict[int, list[LiePoly]] | None:
        # brackets reaching degree d only involve degrees up to d - (lowest invariant degree)
        if not inv_degrees:
            return {}
        out = {}
        for e in inv_degrees:
            if e > d - inv_degrees[0]:
                break
            if e not in prims:
                b = exact_basis(e)
                if b is None:
                    prims[e] = None
                else:
                    lower = lower_primitives(e)
                    prims[e] = None if lower is None else \
                        primitive_split(rep, e, b, nonprimitive_basis(rep, e, lower)).primitive
            if prims[e] is None:
                return None
            out[e] = prims[e]
        return out

    for d in todo:
        basis, hit = bases[d]
        nonprim, source, indices = 0, "bracketed", None
        if split:
            predicted = nonprimitive_dims(prim_counts, d)[d] if prim_counts else 0
            lower = lower_primitives(d)
            if lower is not None:
                sp = primitive_split(rep, d, basis, nonprimitive_basis(rep, d, lower))
                nonprim, indices = sp.nonprimitive_dim, sp.primitive_indices
                if nonprim != predicted:
                    raise InvariantError(
                        f"degree {d}: {nonprim} independent brackets of lower invariants, free Lie count {predicted}"
                    )
                if basis.exact:
                    prims[d] = sp.primitive
            else:
                nonprim, source = predicted, "predicted"
            if basis.dimension:
                inv_degrees.append(d)
                if basis.dimension - nonprim:
                    prim_counts[d] = basis.dimension - nonprim
        if d not in wanted:
            continue
        weight_dims = {weight_label(rep.zero_weight): basis.ncols}
        weight_dims.update({weight_label(w): basis.block_rows[r] for r, w in zip(rep.raising, rep.raising_weights)})
        failures = _check_basis(rep, basis)
        records.append(DegreeRecord(d, weight_dims, basis, nonprim, source, indices, not failures, failures, hit))
    return records


def format_table(rep: RepSpec, records: Sequence[DegreeRecord]) -> str:
    wcols = list(records[0].weight_dims) if records else []
    head = ["n", *wcols, "invariants", "nonprimitive", "primitive", "backend"]
    rows = []
    for r in records:
        np_cell = str(r.nonprimitive) + ("*" if r.nonprimitive_source == "predicted" else "")
        rows.append([str(r.degree), *(str(r.weight_dims[c]) for c in wcols), str(r.invariants), np_cell,
                     str(r.primitive), r.basis.backend])
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(head)]
    lines = [f"# {rep.name}"]
    lines.append("  ".join(h.rjust(w) if i < len(head) - 1 else h for i, (h, w) in enumerate(zip(head, widths))))
    for row in rows:
        lines.append("  ".join(c.rjust(w) if i < len(row) - 1 else c for i, (c, w) in enumerate(zip(row, widths))))
    if any(r.nonprimitive_source == "predicted" for r in records):
        lines.append("* predicted from the free Lie algebra on lower primitives (no integral lower basis)")
    return "\n".join(lines)


def _latex_poly(p: LiePoly, alphabet: Alphabet, per_line: int = 3) -> str:
    terms = []
    for i, w in enumerate(p.words()):
        c = p[w]
        mag = abs(c)
        coef = "" if mag == 1 else f"{mag} "
        sign = "-" if c < 0 else ("" if i == 0 else "+")
        terms.append(f"{sign} {coef}{format_word(w, alphabet)}".strip())
    lines = [" ".join(terms[k:k + per_line]) for k in range(0, len(terms), per_line)]
    return " \\\\\n  &\\quad ".join(lines)


def format_latex(rep: RepSpec, records: Sequence[DegreeRecord], emit_basis: bool) -> str:
    wcols = list(records[0].weight_dims) if records else []
    out = ["\\begin{tabular}{" + "r" * (len(wcols) + 3) + "}"]
    out.append(" & ".join(["degree", *(f"${c.replace('w=', '')}$" for c in wcols), "invariants", "primitive"]) + " \\\\")
    for r in records:
        out.append(" & ".join(map(str, [r.degree, *r.weight_dims.values(), r.invariants, r.primitive])) + " \\\\")
    out.append("\\end{tabular}")
    if emit_basis:
        for r in records:
            if not r.basis.exact or not r.invariants:
                continue
            out.append("\\begin{align*}")
            polys = r.basis.polys
            for k, p in enumerate(polys):
                tail = " ," if k < len(polys) - 1 else " ."
                sep = " \\\\" if k < len(polys) - 1 else ""
                out.append(f"  Z_{{{r.degree}}}^{{({k + 1})}}\n  &= {_latex_poly(p, rep.alphabet)}{tail}{sep}")
            out.append("\\end{align*}")
    return "\n".join(out)


# --------------------------------------------------------------------------
# subcommands


def _env_cache(args) -> Path | None:
    if getattr(args, "no_cache", False):
        return None
    d = args.cache_dir or os.environ.get(ENV_CACHE)
    return Path(d) if d else None


def _threads(args) -> int:
    t = args.threads if args.threads is not None else os.environ.get(ENV_THREADS, "1")
    try:
        t = int(t)
    except ValueError:
        raise ConfigError(f"bad thread count {t!r}") from None
    if t < 1:
        raise ConfigError("thread count must be at least 1")
    return t


def cmd_hall(args, out) -> int:
    if args.rep:
        rep = load_rep(args.rep)
        alphabet = rep.alphabet
    else:
        rep = None
        alphabet = Alphabet.of(args.letters)
    if args.degree < 1:
        raise ConfigError("degree must be at least 1")
    if args.weight is not None:
        if rep is None:
            raise ConfigError("--weight needs --rep")
        words = weight_basis(rep, args.degree, parse_weight(args.weight, rep.rank))
    else:
        words = hall_words(alphabet, args.degree)
    if args.count:
        print(len(words), file=out)
    else:
        for w in words:
            if rep is not None and args.show_weight:
                print(format_word(w, alphabet), weight(rep, w), file=out)
            else:
                print(format_word(w, alphabet), file=out)
    return EXIT_OK


def cmd_invariants(args, out) -> int:
    rep = load_rep(args.rep)
    if args.degree is None and args.degrees is None:
        raise ConfigError("give --degree or --degrees")
    degrees = parse_degrees(args.degrees) if args.degrees else [args.degree]
    if any(d < 1 for d in degrees):
        raise ConfigError("degree must be at least 1")
    primes = parse_primes(args.primes if args.primes is not None else os.environ.get(ENV_PRIMES))
    delta = parse_delta(args.delta)
    try:
        parse_backend(args.backend)
    except InvariantError as e:
        raise ConfigError(str(e)) from None
    records = run_invariants(rep, degrees, args.backend, primes, delta, _env_cache(args), _threads(args),
                             split=not args.no_split)
    if args.format == "json":
        payload = {
            "rep": rep.name,
            "rep_hash": rep.content_hash(),
            "records": [r.to_json(rep, args.emit_basis, args.timings) for r in records],
        }
        print(json.dumps(payload, indent=1, sort_keys=True), file=out)
    elif args.format == "latex":
        print(format_latex(rep, records, args.emit_basis), file=out)
    else:
        print(format_table(rep, records), file=out)
        for r in records:
            b = r.basis
            status = "verified" if r.verified else "VERIFICATION FAILED"
            extra = f", squared norms {b.norms}" if b.exact and b.dimension else ""
            if not b.exact and b.dimension:
                extra = f", basis over F_{b.primes[0]}, rank confirmed mod {', '.join(map(str, b.primes[1:]))}"
            print(f"{rep.name} degree {r.degree}: dimension {r.invariants} ({b.backend}, {status}){extra}", file=out)
            for f in r.failures:
                print(f"  {f}", file=out)
            if args.emit_basis:
                if b.exact:
                    for p in b.polys:
                        print(f"  {p.to_text(rep.alphabet)}", file=out)
                else:
                    for v in b.vectors:
                        terms = [f"{c}*{format_word(w, rep.alphabet)}" for c, w in zip(v, b.words) if c]
                        print(f"  (mod {b.primes[0]}) " + " + ".join(terms), file=out)
            if args.timings:
                print(f"  {b.nrows}x{b.ncols} matrix, rank {b.rank}, {b.seconds:.2f}s"
                      + (" (cached)" if r.cache_hit else ""), file=out)
    return EXIT_OK if all(r.verified for r in records) else EXIT_VERIFY


def _read_polys(path: str) -> list[str]:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def cmd_verify(args, out) -> int:
    rep = load_rep(args.rep)
    status = EXIT_OK
    for line in _read_polys(args.file):
        try:
            p = parse_poly(line, rep.alphabet)
            cert = verify_invariant(rep, p)
        except (HallError, InvariantError) as e:
            print(f"error  {line}: {e}", file=out)
            status = max(status, EXIT_CONFIG)
            continue
        tag = "ok   " if cert.passed else "FAIL "
        print(f"{tag} {p.to_text(rep.alphabet)}", file=out)
        if not cert.passed:
            for g, r in cert.residuals.items():
                print(f"      {g}: {r.to_text(rep.alphabet)}", file=out)
            status = max(status, EXIT_VERIFY)
    return status


def cmd_witt(args, out) -> int:
    if args.bound < 1:
        raise ConfigError("bound must be at least 1")
    if args.primitives:
        counts = parse_primitives(args.primitives)
        dims = nonprimitive_dims(counts, args.bound)
        if args.format == "json":
            print(json.dumps({"primitives": {str(k): v for k, v in sorted(counts.items())},
                              "nonprimitive": {str(k): v for k, v in dims.items()}}, indent=1), file=out)
        else:
            print(" n  nonprimitive", file=out)
            for n, v in dims.items():
                print(f"{n:>2}  {v:>12}", file=out)
        return EXIT_OK
    rep = None
    if args.rep:
        rep = load_rep(args.rep)
        gens = rep_generators(rep)
    elif args.gens:
        gens = parse_gens(args.gens)
    else:
        raise ConfigError("give --rep, --gens or --primitives")
    table = free_lie_dims(gens, args.bound)
    weights = []
    if args.weights:
        rank = len(next(iter(gens))) - 1
        if rank < 1:
            raise ConfigError("--weights needs multidegrees with weight coordinates")
        weights = parse_weights(args.weights, rank)
    checks = {}
    if args.check and rep is not None:
        for n in range(1, args.bound + 1):
            got = [len(weight_basis(rep, n, w)) for w in weights] if weights else [len(hall_words(rep.n_letters, n))]
            want = [table[(n, *w)] for w in weights] if weights else [table.total(n)]
            checks[n] = (got, want)
    status = EXIT_OK if all(g == w for g, w in checks.values()) else EXIT_VERIFY
    if args.format == "json":
        data = json.loads(table.to_json())
        if checks:
            data["checks"] = [{"degree": n, "weights": [list(w) for w in weights], "enumerated": g,
                               "predicted": w, "ok": g == w} for n, (g, w) in checks.items()]
        print(json.dumps(data, indent=1), file=out)
    else:
        head = [" n", "total", *(weight_label(w) for w in weights)]
        if checks:
            head.append("enumerated")
        print("  ".join(f"{h:>10}" if i else h for i, h in enumerate(head)), file=out)
        for n in range(1, args.bound + 1):
            cells = [f"{n:>2}", f"{table.total(n):>10}", *(f"{table[(n, *w)]:>10}" for w in weights)]
            if checks:
                got, want = checks[n]
                cells.append(f"{'ok' if got == want else 'MISMATCH ' + str(got):>10}")
            print("  ".join(cells), file=out)
    return status


def cmd_rep(args, out) -> int:
    if args.rep_command == "list":
        for name in BUILTIN_NAMES:
            print(name, file=out)
        return EXIT_OK
    rep = load_rep(args.name)
    print(json.dumps(rep.to_json(), indent=1), file=out)
    return EXIT_OK


def cmd_cache(args, out) -> int:
    d = args.cache_dir or os.environ.get(ENV_CACHE)
    if not d:
        raise ConfigError(f"no cache directory (use --cache-dir or {ENV_CACHE})")
    target = Path(d) / args.rep if args.rep else Path(d)
    if target.exists():
        shutil.rmtree(target)
        print(f"removed {target}", file=out)
    else:
        print(f"nothing to remove at {target}", file=out)
    return EXIT_OK


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lieinv",
        description="Hall bases of free Lie algebras and their invariants under sl2/sl3 actions.",
        epilog=f"Environment: {ENV_CACHE} (cache directory), {ENV_PRIMES} (comma-separated primes), "
               f"{ENV_THREADS} (worker processes). Flags override the environment.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hall", help="list or count Hall words")
    h.add_argument("--letters", default="ab", help="ordered alphabet, e.g. ab or abc (default ab)")
    h.add_argument("--rep", help="take the alphabet from a representation; enables --weight")
    h.add_argument("--degree", type=int, required=True)
    h.add_argument("--weight", help="keep words of this weight, e.g. 0 or 2,-1")
    h.add_argument("--count", action="store_true", help="print only the number of words")
    h.add_argument("--show-weight", action="store_true", help="print each word's weight (needs --rep)")
    h.set_defaults(func=cmd_hall)

    i = sub.add_parser("invariants", help="compute invariant bases and dimension tables")
    i.add_argument("--rep", required=True, help=f"one of {', '.join(BUILTIN_NAMES)} or a RepSpec JSON file")
    g = i.add_mutually_exclusive_group()
    g.add_argument("--degree", type=int)
    g.add_argument("--degrees", help="range such as 1..12, 2..14:2 or 2,6,10")
    i.add_argument("--backend", default="auto", help="auto, rational, hnf-lll, modular or modular:<p> (default auto)")
    i.add_argument("--primes", help=f"primes for the modular backend, first is the working prime "
                                    f"(default {DEFAULT_PRIME},{CONFIRM_PRIME})")
    i.add_argument("--delta", default="3/4", help="LLL parameter in (1/4, 1] (default 3/4)")
    i.add_argument("--cache-dir", help="cache directory")
    i.add_argument("--no-cache", action="store_true", help="ignore the cache")
    i.add_argument("--threads", type=int, help="worker processes for degree ranges")
    i.add_argument("--format", choices=("text", "json", "latex"), default="text")
    i.add_argument("--emit-basis", action="store_true", help="print the basis polynomials")
    i.add_argument("--no-split", action="store_true", help="skip the primitive/non-primitive split")
    i.add_argument("--timings", action="store_true", help="report matrix sizes and run times")
    i.set_defaults(func=cmd_invariants)

    v = sub.add_parser("verify", help="check that Lie polynomials are invariant")
    v.add_argument("file", help="one polynomial per line ('-' for stdin, '#' starts a comment)")
    v.add_argument("--rep", required=True)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("witt", help="free Lie algebra dimensions and non-primitive predictions")
    src = w.add_mutually_exclusive_group()
    src.add_argument("--rep", help="use the letter weights of a representation")
    src.add_argument("--gens", help='generator multidegrees with counts, e.g. "(1):3" or "(1,1):1,(1,-1):1"')
    src.add_argument("--primitives", help="primitive counts degree:count,... (or a file) for non-primitive dimensions")
    w.add_argument("--bound", type=int, required=True, help="largest total degree")
    w.add_argument("--weights", help="weight columns: 0,2 for rank 1, 0,0;2,-1 for rank 2")
    w.add_argument("--check", action="store_true", help="compare with direct Hall-word counts (--rep only)")
    w.add_argument("--format", choices=("text", "json"), default="text")
    w.set_defaults(func=cmd_witt)

    r = sub.add_parser("rep", help="inspect representations")
    rsub = r.add_subparsers(dest="rep_command", required=True)
    rd = rsub.add_parser("dump", help="print a representation as JSON")
    rd.add_argument("name")
    rsub.add_parser("list", help="list built-in representations")
    r.set_defaults(func=cmd_rep)

    c = sub.add_parser("cache", help="manage the result cache")
    csub = c.add_subparsers(dest="cache_command", required=True)
    cc = csub.add_parser("clear", help="delete cached results")
    cc.add_argument("--cache-dir")
    cc.add_argument("--rep", help="only this representation")
    c.set_defaults(func=cmd_cache)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except BackendDisagreement as e:
        print(f"lieinv: {e}", file=sys.stderr)
        return EXIT_DISAGREE
    except (ConfigError, RepError, HallError, OSError) as e:
        print(f"lieinv: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantError as e:
        print(f"lieinv: {e}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
