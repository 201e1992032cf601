"""Compare the jitted and pure-Python coset enumeration kernels.

Each backend runs in its own interpreter because the backend is chosen
once, at import time, from FPGROUP_DISABLE_NUMBA.

    python3 benchmarks/bench_enumerate.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time

CASES = {
    "D8": "< s, t | s^4, t^2, t^-1*s*t = s^3 >",
    "Z8 x| Z2": "< s, t | t^2, t^-1*s*t = s^3 >",
    "metacyclic, k=5": "< x, y | x^-1*y*x = y^2, x^5 >",
    "A5": "< a, b | a^2, b^3, (a*b)^5 >",
    "transformed D8": (
        "< s, t, a, b, c | s^-4*a*s^4 = a^2, a^-1*s^4*a = s^8,"
        " t^-2*b*t^2 = b^2, b^-1*t^2*b = t^4,"
        " (t^-1*s*t*s^-3)^-1*c*(t^-1*s*t*s^-3) = c^2,"
        " c^-1*(t^-1*s*t*s^-3)*c = (t^-1*s*t*s^-3)^2 >"),
    "transformed A5": None,
    "free cyclic (overflow)": "< x | >",
}


def child(repeat: int) -> None:
    from fpgroup import _jit
    from fpgroup.cosets import coset_enumerate
    from fpgroup.syntax import parse_presentation, print_presentation
    from fpgroup.transform import just_finite_transform

    cases = dict(CASES)
    cases["transformed A5"] = print_presentation(
        just_finite_transform(parse_presentation(CASES["A5"])).output)
    start = time.perf_counter()
    coset_enumerate(parse_presentation(CASES["D8"]))  # JIT compile or cache load
    warmup = time.perf_counter() - start
    rows = {}
    for name, text in cases.items():
        p = parse_presentation(text)
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = coset_enumerate(p)
            best = min(best, time.perf_counter() - t0)
        rows[name] = {"seconds": best, "result": getattr(out, "index", str(out)),
                      "defined": out.stats.get("defined")}
    print(json.dumps({"numba": _jit.USE_NUMBA, "warmup": warmup, "rows": rows}))


def run_backend(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("FPGROUP_DISABLE_NUMBA", None)
    if disable:
        env["FPGROUP_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, __file__, "--child", "--repeat", str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        child(args.repeat)
        return
    jit = run_backend(False, args.repeat)
    pure = run_backend(True, args.repeat)
    if not jit["numba"]:
        print("numba is not importable; both columns use the pure-Python kernel")
    print(f"warm-up (compile or cache load): numba {jit['warmup']:.2f}s, pure {pure['warmup']:.2f}s")
    print(f"{'case':<24}{'result':>8}{'cosets':>10}{'numba s':>11}{'pure s':>10}{'speedup':>9}")
    for name, row in jit["rows"].items():
        other = pure["rows"][name]
        assert other["result"] == row["result"], name
        speedup = other["seconds"] / row["seconds"] if row["seconds"] else float("inf")
        result = row["result"] if isinstance(row["result"], int) else "overflow"
        print(f"{name:<24}{result:>8}{row['defined']:>10}{row['seconds']:>11.4f}"
              f"{other['seconds']:>10.4f}{speedup:>8.0f}x")


if __name__ == "__main__":
    main()
