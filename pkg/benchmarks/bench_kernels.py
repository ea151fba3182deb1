"""Compare the compiled and pure-Python kernels.

Each backend runs in its own interpreter because the backend is chosen at
import time. Usage: ``python benchmarks/bench_kernels.py [E7 E8 ...]``.
"""
import json
import os
import subprocess
import sys

PROBE = r"""
import json, sys, time
from idealtype import kernels
from idealtype.certify import _comparable, count_certified, dependence_table
from idealtype.roots import build_root_system

out = {"backend": kernels.BACKEND}
for name in sys.argv[1:]:
    rs = build_root_system(name[0], int(name[1:]))
    dependence_table(rs)
    args = (list(rs.up), list(_comparable(rs)), rs.size)
    t = time.perf_counter()
    for _ in range(5):
        kernels.antichain_ideals(*args)
    enum = (time.perf_counter() - t) / 5
    t = time.perf_counter()
    total, certified = count_certified(rs)
    cert = time.perf_counter() - t
    out[name] = {"enumerate_s": enum, "certify_s": cert, "total": total, "certified": certified}
print(json.dumps(out))
"""


def run(pure: bool, systems):
    env = dict(os.environ)
    env.pop("IDEALTYPE_PURE_PYTHON", None)
    if pure:
        env["IDEALTYPE_PURE_PYTHON"] = "1"
    res = subprocess.run([sys.executable, "-c", PROBE, *systems], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    systems = sys.argv[1:] or ["E6", "E7", "E8"]
    fast = run(False, systems)
    slow = run(True, systems)
    if fast["backend"] != "cython":
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'system':<8}{'backend':<10}{'enumerate':>12}{'certify':>12}{'speedup':>10}")
    for name in systems:
        for label, r in (("python", slow), (fast["backend"], fast)):
            row = r[name]
            sp = slow[name]["certify_s"] / row["certify_s"] if row["certify_s"] else float("nan")
            print(f"{name:<8}{label:<10}{row['enumerate_s']:>11.4f}s{row['certify_s']:>11.3f}s{sp:>9.2f}x")
        assert fast[name]["certified"] == slow[name]["certified"]


if __name__ == "__main__":
    main()
