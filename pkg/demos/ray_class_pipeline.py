"""Find a vector attaining the ray class bound for a modulus, inspect the
unit reduction behind the attainment claim, and emit the GP cross-check.

The ray bound adds 2^n * omega(c) to the narrow bound. Attaining it needs
the combined vector (c, a_1, ..., a_n) to be maximal and every quadratic
subfield unit to reduce to a square modulo every prime of c, which the
report below records row by row.
"""

import io

import narrow2 as n2


def main() -> None:
    c = 5
    entries = n2.find_ray_class_vector(c, (1, 1), limit=10**6)
    print(f"modulus {c}: found vector {entries.entries}")

    report = n2.ray_class_report(entries.entries, c)
    print(f"predicted 2-rank of the ray class group: {report.bound}")
    print(f"combined vector maximal: {report.maximal.verdict}")
    print(f"unit scope: {report.units.scope}")
    for row in report.units.rows:
        d = "torsion" if row[0] == -1 else f"Q(sqrt {row[0]})"
        print(f"  {d:14} mod {row[1]}: split={row[2]} square={row[3]}")
    print(f"bound attained: {report.attained}")

    # A rejected pair for contrast: 13 splits in neither direction mod 5.
    bad = n2.verify_unit_reduction((13,), c)
    print(f"\ncontrol (13,) mod {c}: verdict {bad.verdict}")

    buf = io.StringIO()
    n2.emit_gp_script(entries.entries, c, out=buf)
    print("\nGP cross-check script:")
    print(buf.getvalue())


if __name__ == "__main__":
    main()
