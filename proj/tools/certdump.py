#!/usr/bin/env python3
"""Pretty-print a verification certificate produced by `wunits verify`."""

import argparse
import json
import sys


def poly_summary(coeffs, full):
    if coeffs is None:
        return "-"
    if full or max(len(c) for c in coeffs) <= 12:
        terms = []
        for k in range(len(coeffs) - 1, -1, -1):
            c = coeffs[k]
            if c == "0":
                continue
            mon = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            if c == "1" and mon:
                terms.append(mon)
            elif c == "-1" and mon:
                terms.append(f"-{mon}")
            else:
                terms.append(f"{c}{mon}" if mon else c)
        return " + ".join(terms).replace("+ -", "- ") or "0"
    deg = len(coeffs) - 1
    digits = max(len(c.lstrip("-")) for c in coeffs)
    return f"degree {deg}, constant {coeffs[0]}, largest coefficient ~10^{digits - 1}"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("cert", nargs="?", help="certificate file (defaults to stdin)")
    ap.add_argument("--full-poly", action="store_true",
                    help="print polynomials in full even when the coefficients are long")
    args = ap.parse_args()

    try:
        if args.cert:
            with open(args.cert) as f:
                cert = json.load(f)
        else:
            cert = json.load(sys.stdin)
    except (OSError, json.JSONDecodeError) as e:
        sys.exit(f"error: {e}")

    if cert.get("format_version") != "1":
        sys.exit(f"error: unsupported format_version {cert.get('format_version')!r}")

    ins = cert["inputs"]
    print(f"instance     d_K = {ins['d_K']}, m = {ins['m']}, n = {ins['n']}")
    print(f"precision    {ins['precision_bits']} bits")
    print(f"degree ell   {cert['ell']}")
    if cert["galois_reps"]:
        print(f"galois reps  {', '.join(str(t) for t in cert['galois_reps'])}")

    width = max((len(c["name"]) for c in cert["checks"]), default=4)
    print()
    for c in cert["checks"]:
        mark = {"pass": "ok  ", "fail": "FAIL", "flag": "FLAG"}.get(c["status"], "?   ")
        line = f"  {mark} {c['name']:<{width}}  residual {c['residual']}"
        print(line)
        if c.get("polynomial") is not None:
            print(f"       {'':{width}}  {poly_summary(c['polynomial'], args.full_poly)}")

    print()
    print(f"verdict      {cert['verdict']}   ({cert['runtime_ms']} ms)")
    sys.exit(0 if cert["verdict"] == "pass" else 1)


if __name__ == "__main__":
    main()
