import csv
import re

import pytest

from harmonic_valence.figures import degree_figure, tree_coordinates, tree_figure
from harmonic_valence.trees import build_hubbard_trees, count_classes


@pytest.mark.parametrize("n", [2, 3, 7, 8])
def test_degree_figure_writes_svg_and_csv(tmp_path, n):
    svg, table, count = degree_figure(n, tmp_path)
    assert svg.name == f"trees-n{n}.svg" and table.parent == svg.parent
    text = svg.read_text()
    ids = re.findall(r'id="hubbard-tree-(\d+)"', text)
    assert sorted(map(int, ids)) == list(range(count)) == list(range(count_classes(n).closed_form_Q))
    assert 'stroke-dasharray' in text
    rows = list(csv.DictReader(open(table)))
    assert len(rows) == count * (n - 1)


def test_svg_is_reproducible(tmp_path):
    a, _, _ = degree_figure(7, tmp_path / "a")
    b, _, _ = degree_figure(7, tmp_path / "b")
    assert a.read_bytes() == b.read_bytes()


def test_coordinates_symmetric():
    for t in build_hubbard_trees(9):
        rows = {r["vertex"]: r for r in tree_coordinates(t)}
        for r in rows.values():
            mate = rows[r["conjugate"]]
            assert mate["x"] == pytest.approx(r["x"], abs=1e-12)
            assert mate["y"] == pytest.approx(-r["y"], abs=1e-12)


def test_tree_figure_panels():
    fig = tree_figure(build_hubbard_trees(5), "five")
    assert len(fig.axes) == 4
