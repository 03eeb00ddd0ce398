"""Regenerate the stored extremal solutions used by ``verify``.

One representative per conjugacy class for 2 <= n <= 8, solved from tree
seeds with the default generator seed and verified before writing.
"""

import sys
from pathlib import Path

from harmonic_valence.extremal import search_classes, verify_solution
from harmonic_valence.report import dumps, solution_to_dict


def main(out: Path) -> None:
    entries = []
    for n in range(2, 9):
        for sol in search_classes(n).solutions:
            sol = verify_solution(sol)
            d = solution_to_dict(sol)
            entries.append({k: d[k] for k in ("label", "degree", "coefficients",
                                              "critical_points", "zeros")})
    out.write_text(dumps({"schema": 1, "solutions": entries}))
    print(f"wrote {len(entries)} solutions to {out}")


if __name__ == "__main__":
    default = Path(__file__).resolve().parents[1] / "src" / "harmonic_valence" / "data" / "golden.json"
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else default)
