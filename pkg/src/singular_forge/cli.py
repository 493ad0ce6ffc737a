"""Command-line front end.

Subcommands: construct, certify, scan-b, sample-curve, word. Jobs are
described by a JSON config file plus flag overrides; artifacts are JSON
(polynomials, certificates) and CSV (scans, curves). Exit codes: 0
success / all certificates pass, 1 I/O failure, 2 invalid input or
construction impossibility, 3 certification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .braidlib import (
    BraidParam,
    BraidWord,
    from_fourier,
    is_strictly_homogeneous,
    lemniscate,
    square_parametrisation,
    word_of_param,
    word_symmetry,
)
from .certify import (
    _sphere_radius,
    arg_crit_scan,
    d_regularity_check,
    isolation_check,
    radial_identity_check,
    sphere_link_check,
    tune_lambda,
)
from .construct import (
    MixedPoly,
    choose_k,
    derive_scaling,
    expand_g,
    homogenize,
)
from .errors import CertificationFailure, InvalidInput
from .trigpoly import TrigPoly

AB_FLOOR = 1e-12

DEFAULT_RADII = (0.25, 0.5, 1.0)
DEFAULT_T_SAMPLES = 2048
DEFAULT_R_SAMPLES = 24
DEFAULT_CURVE_SAMPLES = 1024

CHECK_NAMES = ("arg-crit", "isolation", "sphere-link", "d-reg", "radial")


# ----------------------------------------------------------------------
# job configuration


@dataclass
class JobConfig:
    input: dict = field(default_factory=lambda: {"type": "lemniscate", "s": 2, "ell": 1, "r": 1})
    a: float = 1.0
    b: float = 1.0
    lambda0: float = 1.0
    k: int | None = None
    q1: Fraction | None = None
    q2: Fraction | None = None
    square: bool = False
    radii: tuple = DEFAULT_RADII
    t_samples: int = DEFAULT_T_SAMPLES
    r_samples: int = DEFAULT_R_SAMPLES
    curve_samples: int = DEFAULT_CURVE_SAMPLES

    def validate(self):
        if self.a <= AB_FLOOR or self.b <= AB_FLOOR:
            raise ValueError("a,b must exceed 1e-12")
        if self.lambda0 <= 0:
            raise ValueError("lambda0 must be positive")
        if not self.radii or any(r <= 0 or r > 1 for r in self.radii):
            raise ValueError("radii must lie in (0, 1]")
        if (self.q1 is None) != (self.q2 is None):
            raise ValueError("q1 and q2 must be given together")
        if self.t_samples < 64 or self.r_samples < 1 or self.curve_samples < 1:
            raise ValueError("grid sizes out of range")


def _as_fraction(x):
    if x is None:
        return None
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x).limit_denominator(1 << 30)


def _load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config must be a JSON object")
    return data


def _job_from_args(args) -> JobConfig:
    cfg = _load_config(args.config) if args.config else {}
    job = JobConfig()

    if "input" in cfg:
        job.input = cfg["input"]
    grids = cfg.get("grids", {})
    job.a = float(cfg.get("a", job.a))
    job.b = float(cfg.get("b", job.b))
    job.lambda0 = float(cfg.get("lambda0", job.lambda0))
    job.k = cfg.get("k", None)
    qm = cfg.get("q_mode", "auto")
    if isinstance(qm, dict):
        job.q1 = _as_fraction(qm.get("q1"))
        job.q2 = _as_fraction(qm.get("q2"))
    elif qm != "auto":
        raise ValueError("q_mode must be 'auto' or an object with q1, q2")
    job.square = bool(cfg.get("square", job.square))
    job.radii = tuple(float(r) for r in cfg.get("radii", job.radii))
    job.t_samples = int(grids.get("t_samples", job.t_samples))
    job.r_samples = int(grids.get("r_samples", job.r_samples))
    job.curve_samples = int(grids.get("curve_samples", job.curve_samples))

    # flag overrides
    if getattr(args, "s", None) is not None:
        job.input = {
            "type": "lemniscate",
            "s": args.s,
            "ell": args.ell if args.ell is not None else 1,
            "r": args.r if args.r is not None else 1,
        }
    elif getattr(args, "ell", None) is not None or getattr(args, "r", None) is not None:
        if job.input.get("type") != "lemniscate":
            raise ValueError("--ell/--r overrides need a lemniscate input")
        if args.ell is not None:
            job.input = {**job.input, "ell": args.ell}
        if args.r is not None:
            job.input = {**job.input, "r": args.r}
    if getattr(args, "strands", None) is not None or getattr(args, "letters", None) is not None:
        if args.strands is None or args.letters is None:
            raise ValueError("--strands and --letters must be given together")
        job.input = {"type": "word", "strands": args.strands,
                     "letters": _parse_letters(args.letters)}
    if getattr(args, "a", None) is not None:
        job.a = args.a
    if getattr(args, "b", None) is not None:
        job.b = args.b
    if getattr(args, "lambda0", None) is not None:
        job.lambda0 = args.lambda0
    if getattr(args, "k", None) is not None:
        job.k = args.k
    if getattr(args, "q1", None) is not None or getattr(args, "q2", None) is not None:
        job.q1 = _as_fraction(args.q1)
        job.q2 = _as_fraction(args.q2)
    if getattr(args, "square", None) is not None:
        job.square = args.square
    if getattr(args, "radii", None) is not None:
        job.radii = tuple(_parse_floats(args.radii))
    if getattr(args, "t_samples", None) is not None:
        job.t_samples = args.t_samples
    if getattr(args, "r_samples", None) is not None:
        job.r_samples = args.r_samples

    job.validate()
    return job


def _parse_floats(text):
    return [float(x) for x in text.replace(",", " ").split()]


def _parse_letters(text):
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    return [int(x) for x in text.replace(",", " ").split()]


def _trig_from_entries(entries, axis):
    coeffs = {}
    for e in entries:
        f = int(e["freq"])
        c = complex(float(e.get("re", 0.0)), float(e.get("im", 0.0)))
        if f in coeffs:
            raise ValueError(f"duplicate {axis}-frequency {f}")
        coeffs[f] = c
    # unmatched frequencies get their conjugate mirror so the series is real
    for f, c in list(coeffs.items()):
        if f != 0 and -f not in coeffs:
            coeffs[-f] = c.conjugate()
    return TrigPoly(coeffs)


def braid_from_input(block: dict, square=False) -> BraidParam:
    """BraidParam from a config input block (lemniscate or fourier)."""
    kind = block.get("type")
    if kind == "lemniscate":
        b = lemniscate(int(block["s"]), int(block["ell"]), int(block.get("r", 1)))
    elif kind == "fourier":
        comps = []
        for c in block["components"]:
            comps.append(
                (
                    int(c["strands"]),
                    _trig_from_entries(c.get("x_coeffs", []), "x"),
                    _trig_from_entries(c.get("y_coeffs", []), "y"),
                )
            )
        b = from_fourier(comps)
    elif kind == "word":
        raise ValueError("word input is only valid for the word command")
    else:
        raise ValueError(f"unknown input type {kind!r}")
    if square:
        b = square_parametrisation(b)
    return b


def construct_from_job(job: JobConfig):
    """(braid, graded, poly) for a job, deriving (q1, q2) and k as needed."""
    b = braid_from_input(job.input, job.square)
    g = expand_g(b)
    if job.q1 is not None:
        q1, q2 = job.q1, job.q2
    else:
        sc = derive_scaling(b)
        q1, q2 = sc.q1, sc.q2
    k = int(job.k) if job.k is not None else choose_k(g)
    p = homogenize(g, job.a, job.b, k, q1, q2, job.lambda0)
    return b, g, p


# ----------------------------------------------------------------------
# artifact writers


def _fmt(x):
    return f"{x:.16e}"


def poly_record(p: MixedPoly) -> dict:
    terms = [
        {"i": i, "alpha": al, "beta": be, "re": c.real, "im": c.imag}
        for (i, al, be), c in sorted(p.terms.items(), reverse=True)
    ]
    return {
        "s": p.s,
        "a": p.a,
        "b": p.b,
        "k": p.k,
        "q1": float(p.q1),
        "q2": float(p.q2),
        "lambda": p.lam,
        "terms": terms,
    }


def poly_from_record(d: dict) -> MixedPoly:
    terms = {
        (int(t["i"]), int(t["alpha"]), int(t["beta"])): complex(t["re"], t["im"])
        for t in d["terms"]
    }
    return MixedPoly(
        s=int(d["s"]), terms=terms, a=float(d["a"]), b=float(d["b"]),
        k=int(d["k"]), q1=Fraction(d["q1"]), q2=Fraction(d["q2"]),
        lam=float(d["lambda"]),
    )


def write_poly_json(p: MixedPoly, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(poly_record(p), fh, indent=2)
        fh.write("\n")


def read_poly_json(path) -> MixedPoly:
    with open(path, "r", encoding="utf-8") as fh:
        return poly_from_record(json.load(fh))


def write_poly_txt(p: MixedPoly, path):
    lines = [
        f"# p(u, v), s={p.s} a={_fmt(p.a)} b={_fmt(p.b)} k={p.k} "
        f"q1={p.q1} q2={p.q2} lambda={_fmt(p.lam)}",
        "# term: re im  (u^i v^alpha conj(v)^beta)",
    ]
    for (i, al, be), c in sorted(p.terms.items(), reverse=True):
        lines.append(f"u^{i} v^{al} vb^{be}: {_fmt(c.real)} {_fmt(c.imag)}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def write_certificates(certs, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([c.to_record() for c in certs], fh, indent=2)
        fh.write("\n")


# ----------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    job = _job_from_args(args)
    _, _, p = construct_from_job(job)
    out = args.out or "poly.json"
    txt = args.txt_out or "poly.txt"
    write_poly_json(p, out)
    write_poly_txt(p, txt)
    print(f"wrote {out} and {txt} ({len(p.terms)} terms, s={p.s}, k={p.k}, "
          f"q1={p.q1}, q2={p.q2}, lambda={p.lam})")
    return 0


def _run_checks(job, b, p, checks):
    certs = []
    for name in checks:
        if name == "arg-crit":
            certs.append(arg_crit_scan(b, job.a, job.b, t_samples=job.t_samples))
        elif name == "isolation":
            certs.append(isolation_check(p, r_samples=job.r_samples,
                                         t_samples=max(64, job.t_samples // 8)))
        elif name == "sphere-link":
            certs.append(sphere_link_check(p, b, radii=job.radii,
                                           t_samples=max(1024, job.t_samples)))
        elif name == "d-reg":
            certs.append(d_regularity_check(p, radii=job.radii))
        elif name == "radial":
            certs.append(radial_identity_check(p))
        else:
            raise ValueError(f"unknown check {name!r}")
    return certs


def cmd_certify(args) -> int:
    job = _job_from_args(args)
    b, g, p = construct_from_job(job)
    checks = list(CHECK_NAMES) if args.check == "all" else [args.check]
    if "radial" in checks and args.check == "all" and (p.q1 != 0 or p.q2 != 0):
        checks.remove("radial")  # identity only applies to the q = 0 grading

    certs = []
    if args.tune_lambda:
        lam, p, tuned = tune_lambda(
            b, p.k, p.q1, p.q2, job.lambda0, a=job.a, bb=job.b,
            radii=job.radii, r_samples=job.r_samples,
            t_samples=max(64, job.t_samples // 8),
            sphere_t_samples=max(1024, job.t_samples),
        )
        print(f"tuned lambda: {lam!r}")
        certs.extend(tuned)
        checks = [c for c in checks if c not in ("isolation", "sphere-link")]
    certs.extend(_run_checks(job, b, p, checks))

    out = args.out or "certificates.json"
    write_certificates(certs, out)
    for c in certs:
        print(f"{c.kind}: {'pass' if c.passed else 'FAIL'} (margin {c.margin:.3e})")
    print(f"wrote {out}")
    return 0 if all(c.passed for c in certs) else 3


def cmd_scan_b(args) -> int:
    job = _job_from_args(args)
    b_lo, b_hi, steps = args.b_min, args.b_max, args.steps
    if not (0 < b_lo <= b_hi <= 10):
        raise ValueError("b range must lie within (0, 10]")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    braid = braid_from_input(job.input, job.square)
    bs = np.geomspace(b_lo, b_hi, steps)
    rows = []
    for bb in bs:
        cert = arg_crit_scan(braid, job.a, float(bb), t_samples=job.t_samples)
        rows.append((float(bb), cert.margin, cert.passed))
    out = args.out or "scan.csv"
    with open(out, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["b", "margin", "pass"])
        for bb, margin, ok in rows:
            w.writerow([repr(bb), repr(margin), "true" if ok else "false"])
    passing = [bb for bb, _, ok in rows if ok]
    if passing:
        print(f"largest passing b: {max(passing)!r}")
    else:
        print("no passing b")
    print(f"wrote {out}")
    return 0


def cmd_sample_curve(args) -> int:
    job = _job_from_args(args)
    b, _, p = construct_from_job(job)
    ae, be = p.a_eff, p.b_eff
    c1 = 2 * p.k + float(p.q1)
    c2 = 2 * p.k + float(p.q2)
    ts = np.arange(job.curve_samples) * (2.0 * math.pi / job.curve_samples)
    out = args.out or "curves.csv"
    with open(out, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["rho", "strand", "t", "re_u", "im_u", "r"])
        for rho in job.radii:
            r, pos = _sphere_radius(b, ae, be, c1, c2, ts, rho)
            u = r**c1 * ae * pos.real + 1j * r**c2 * be * pos.imag
            for j in range(u.shape[1]):
                for ti in range(u.shape[0]):
                    w.writerow([
                        repr(float(rho)), j, repr(float(ts[ti])),
                        repr(float(u[ti, j].real)), repr(float(u[ti, j].imag)),
                        repr(float(r[ti, j])),
                    ])
    print(f"wrote {out}")
    return 0


def cmd_word(args) -> int:
    job = _job_from_args(args)
    block = job.input
    if block.get("type") == "word":
        w = BraidWord(int(block["strands"]), tuple(_parse_letters(block["letters"])))
    else:
        b = braid_from_input(block, job.square)
        w = word_of_param(b, t_samples=max(1024, job.t_samples), a=job.a, bb=job.b)
    print(f"word: {w}")
    print(f"strictly_homogeneous: {'true' if is_strictly_homogeneous(w) else 'false'}")
    print(f"symmetry: {word_symmetry(w)}")
    return 0


# ----------------------------------------------------------------------
# parser


def _add_common(sp):
    sp.add_argument("--config", help="JSON job config")
    sp.add_argument("--s", type=int, help="lemniscate strand count")
    sp.add_argument("--ell", type=int, help="lemniscate y-frequency")
    sp.add_argument("--r", type=int, help="lemniscate speed")
    sp.add_argument("--a", type=float, help="x stretch")
    sp.add_argument("--b", type=float, help="y stretch")
    sp.add_argument("--k", type=int, help="homogenization order")
    sp.add_argument("--q1", help="scaling exponent q1 (with --q2)")
    sp.add_argument("--q2", help="scaling exponent q2 (with --q1)")
    sp.add_argument("--lambda0", type=float, help="coefficient scale")
    sp.add_argument("--square", dest="square", action="store_const", const=True,
                    help="square the parametrisation")
    sp.add_argument("--no-square", dest="square", action="store_const", const=False,
                    help=argparse.SUPPRESS)
    sp.add_argument("--radii", help="comma-separated sphere radii in (0, 1]")
    sp.add_argument("--t-samples", dest="t_samples", type=int)
    sp.add_argument("--r-samples", dest="r_samples", type=int)
    sp.add_argument("--out", help="output path")
    sp.set_defaults(square=None)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="singular-forge",
        description="Construct and certify semiholomorphic polynomials with "
                    "prescribed braid-closure zero sets on small spheres.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", help="build p and write poly.json/poly.txt")
    _add_common(sp)
    sp.add_argument("--txt-out", dest="txt_out", help="text output path")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("certify", help="run certification checks")
    _add_common(sp)
    sp.add_argument("--check", choices=("all",) + CHECK_NAMES, default="all")
    sp.add_argument("--tune-lambda", dest="tune_lambda", action="store_true")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("scan-b", help="sweep b and record arg-crit margins")
    _add_common(sp)
    sp.add_argument("--b-min", dest="b_min", type=float, default=0.05)
    sp.add_argument("--b-max", dest="b_max", type=float, default=2.0)
    sp.add_argument("--steps", type=int, default=25)
    sp.set_defaults(func=cmd_scan_b)

    sp = sub.add_parser("sample-curve", help="emit sphere-intersection curves")
    _add_common(sp)
    sp.set_defaults(func=cmd_sample_curve)

    sp = sub.add_parser("word", help="print braid word and predicates")
    _add_common(sp)
    sp.add_argument("--strands", type=int, help="strand count for a literal word")
    sp.add_argument("--letters", help="signed generator indices, e.g. '1 -2'")
    sp.set_defaults(func=cmd_word)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as e:
        print(f"error: invalid JSON in config: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InvalidInput as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CertificationFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
