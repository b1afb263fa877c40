"""Command-line front end.

    sfwarp augment INPUT... --out DIR [--method sfw|vtlp|gl-only] ...
    sfwarp decompose INPUT --out-prefix PREFIX [--alpha A --beta B]
    sfwarp selftest

Exit status is 0 on success, 1 when any file failed, 2 for bad arguments.
"""

from __future__ import annotations

import argparse
import glob
import logging
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, selftest
from .envelope import DOMAINS, decompose
from .pipeline import GL_ONLY, SFW, VTLP, AugmentConfig, augment, sfw_spectrogram
from .reconstruct import INIT_MODES, INIT_RANDOM, GriffinLimConfig
from .signal_io import read_wav, write_wav
from .stft import FramingParams, power, stft

log = logging.getLogger("sfwarp")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

METHOD_FLAGS = {"sfw": SFW, "vtlp": VTLP, "gl-only": GL_ONLY}
SUFFIXES = {SFW: "sfw", VTLP: "vtlp", GL_ONLY: "gl"}
MANIFEST_NAME = "manifest.tsv"


def parse_range(text: str) -> tuple[float, float]:
    """Parse ``LO:HI`` (or a single value ``V`` meaning ``V:V``)."""
    try:
        if ":" in text:
            lo, hi = (float(v) for v in text.split(":"))
        else:
            lo = hi = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    if not 0 < lo <= hi:
        raise argparse.ArgumentTypeError(f"range must satisfy 0 < LO <= HI, got {text!r}")
    return lo, hi


def positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _add_config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float, default=0.2, help="envelope smoothing factor (default 0.2)")
    p.add_argument("--envelope-domain", choices=DOMAINS, default="log",
                   help="run the envelope recurrence on log or linear power (default log)")
    p.add_argument("--fft", type=int, default=512, help="FFT size (default 512)")
    p.add_argument("--win-ms", type=float, default=25.0, help="window length in ms (default 25)")
    p.add_argument("--hop-ms", type=float, default=10.0, help="hop length in ms (default 10)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sfwarp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("augment", help="augment WAV files")
    a.add_argument("inputs", nargs="+", help="WAV files, directories, or glob patterns")
    a.add_argument("--out", required=True, type=Path, help="output directory")
    a.add_argument("--method", choices=sorted(METHOD_FLAGS), default="sfw")
    a.add_argument("--alpha", type=parse_range, default=(1.0, 1.3), metavar="LO:HI",
                   help="source warp range (default 1:1.3)")
    a.add_argument("--beta", type=parse_range, default=(1.0, 1.3), metavar="LO:HI",
                   help="filter warp range (default 1:1.3)")
    a.add_argument("--eta", type=parse_range, default=(1.0, 1.2), metavar="LO:HI",
                   help="VTLP warp range (default 1:1.2)")
    _add_config_args(a)
    a.add_argument("--gl-iters", type=int, default=8, help="Griffin-Lim iterations (default 8)")
    a.add_argument("--gl-init", choices=INIT_MODES, default=INIT_RANDOM,
                   help="Griffin-Lim initial phase (default random)")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--copies", type=positive_int, default=1, help="augmented copies per input")
    a.add_argument("--jobs", type=positive_int, default=os.cpu_count() or 1,
                   help="worker processes (default: all cores)")

    d = sub.add_parser("decompose", help="dump power, envelope and source matrices as CSV")
    d.add_argument("input", type=Path)
    d.add_argument("--out-prefix", required=True, help="prefix for the .csv files")
    d.add_argument("--alpha", type=float, default=None, help="also dump the spectrogram warped with this source coefficient")
    d.add_argument("--beta", type=float, default=None, help="also dump the spectrogram warped with this filter coefficient")
    _add_config_args(d)

    sub.add_parser("selftest", help="run built-in property checks")
    return parser


def config_from_args(args) -> AugmentConfig:
    framing = FramingParams(args.win_ms, args.hop_ms, args.fft, 16000)
    return AugmentConfig(
        method=METHOD_FLAGS[args.method],
        alpha_range=args.alpha,
        beta_range=args.beta,
        eta_range=args.eta,
        gamma=args.gamma,
        envelope_domain=args.envelope_domain,
        framing=framing,
        gl=GriffinLimConfig(args.gl_iters, args.gl_init),
        seed=args.seed,
    )


def expand_inputs(patterns) -> list[Path]:
    """Resolve files, directories (their *.wav) and globs to a sorted unique list."""
    found = set()
    for pat in patterns:
        path = Path(pat)
        if path.is_dir():
            found.update(p for p in path.glob("*.wav") if p.is_file())
        elif glob.has_magic(pat):
            found.update(Path(p) for p in glob.glob(pat) if Path(p).is_file())
        else:
            # missing files are kept so they fail loudly per file
            found.add(path)
    return sorted(found, key=str)


def output_path(out_dir: Path, src: Path, method: str, copy: int) -> Path:
    return out_dir / f"{src.stem}.{SUFFIXES[method]}{copy}.wav"


def _fmt(v):
    return "-" if v is None else repr(v)


def _augment_file(src: Path, index: int, out_dir: Path, cfg: AugmentConfig, copies: int, protected):
    """Worker: all copies of one input.

    Returns the manifest lines for that file and any warnings raised while
    writing, so the parent process can report them in order.
    """
    w = read_wav(src)
    lines, notes = [], []
    for c in range(copies):
        dst = output_path(out_dir, src, cfg.method, c)
        if dst.resolve() in protected:
            raise ValueError(f"output {dst} would overwrite an input file")
        y, coeffs = augment(w, cfg, index, c)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            write_wav(dst, y)
        notes.extend(str(warning.message) for warning in caught)
        method_name = next(k for k, v in METHOD_FLAGS.items() if v == cfg.method)
        lines.append("\t".join([str(dst), method_name, _fmt(coeffs.alpha), _fmt(coeffs.beta),
                                _fmt(coeffs.eta), str(cfg.seed), str(index)]))
    return lines, notes


def cmd_augment(args) -> int:
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    inputs = expand_inputs(args.inputs)
    if not inputs:
        log.error("no input files matched %s", " ".join(args.inputs))
        return EXIT_USAGE
    args.out.mkdir(parents=True, exist_ok=True)
    protected = frozenset(p.resolve() for p in inputs)

    stems = {}
    for p in inputs:
        stems.setdefault(p.stem, []).append(p)
    clashes = {s for s, ps in stems.items() if len(ps) > 1}

    results = {}
    jobs = min(args.jobs, len(inputs))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {
                i: pool.submit(_augment_file, src, i, args.out, cfg, args.copies, protected)
                for i, src in enumerate(inputs) if src.stem not in clashes
            }
            for i, fut in futures.items():
                try:
                    results[i] = fut.result()
                except Exception as exc:
                    results[i] = exc
    else:
        for i, src in enumerate(inputs):
            if src.stem in clashes:
                continue
            try:
                results[i] = _augment_file(src, i, args.out, cfg, args.copies, protected)
            except Exception as exc:
                results[i] = exc

    manifest = []
    failures = 0
    for i, src in enumerate(inputs):
        if src.stem in clashes:
            log.error("%s: skipped, another input shares the stem %r", src, src.stem)
            failures += 1
            continue
        res = results[i]
        if isinstance(res, Exception):
            msg = str(res)
            log.error("%s", msg if msg.startswith(str(src)) else f"{src}: {msg}")
            failures += 1
        else:
            lines, notes = res
            for note in notes:
                log.warning("%s", note)
            manifest.extend(lines)

    manifest_path = args.out / MANIFEST_NAME
    manifest_path.write_text("".join(line + "\n" for line in manifest))
    print(f"{len(inputs) - failures}/{len(inputs)} inputs augmented, "
          f"{len(manifest)} files written, manifest {manifest_path}")
    return EXIT_FAILURE if failures else EXIT_OK


def save_matrix(path, m) -> None:
    np.savetxt(path, m, delimiter=",", fmt="%.10g")


def cmd_decompose(args) -> int:
    try:
        w = read_wav(args.input)
        framing = FramingParams(args.win_ms, args.hop_ms, args.fft, w.sample_rate)
        p = power(stft(w, framing))
        sf = decompose(p, args.gamma, args.envelope_domain)
        Path(args.out_prefix).parent.mkdir(parents=True, exist_ok=True)
        written = []
        for name, m in (("power", p.values), ("envelope", sf.filter), ("source", sf.source)):
            path = f"{args.out_prefix}.{name}.csv"
            save_matrix(path, m)
            written.append(path)
        if args.alpha is not None or args.beta is not None:
            alpha = 1.0 if args.alpha is None else args.alpha
            beta = 1.0 if args.beta is None else args.beta
            warped = sfw_spectrogram(p, alpha, beta, args.gamma, args.envelope_domain)
            path = f"{args.out_prefix}.warped.csv"
            save_matrix(path, warped.values)
            written.append(path)
    except (OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_FAILURE
    for path in written:
        print(path)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s: %(message)s")
    if args.command == "augment":
        return cmd_augment(args)
    if args.command == "decompose":
        return cmd_decompose(args)
    return EXIT_OK if selftest.run() else EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
