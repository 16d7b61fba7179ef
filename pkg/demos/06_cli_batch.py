"""Driving the batch CLI from Python: compute, verify, scan and cache reuse."""

import io
import json
import tempfile

from expsum_newton.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


with tempfile.TemporaryDirectory() as cache_dir:
    args = ("compute", "--d", "3", "--coeffs", "1,0", "--p", "23", "--cache-dir", cache_dir)
    code, first = call(*args)
    code, second = call(*args)  # served from the cache; stderr notes the hit
    print("compute exit", code, " identical on rerun:", first == second)
    print("  NP vertices:", json.loads(first)["results"][0]["np_vertices"])

    code, table = call("verify", "--d", "3", "--coeffs", "1,0", "--pmin", "20", "--pmax", "50",
                       "--out", "csv", "--cache-dir", cache_dir)
    print("\nverify exit", code)
    print(table)

    code, text = call("scan", "--d", "3", "--coeffs", "1,0", "--pmin", "20", "--pmax", "50", "--cache-dir", cache_dir)
    res = json.loads(text)
    for cls in res["classes"]:
        eps = [(row["p"], row["epsilon_n"]) for row in cls["rows"] if row["n"] == 1]
        print(f"class r={cls['r']}: epsilon_1 by p {eps}  checks {cls['checks']['1']}")

code, _ = call("compute", "--d", "6", "--p", "97")
print("\nd=6, p=97 needs 97^5 elements: exit", code)
