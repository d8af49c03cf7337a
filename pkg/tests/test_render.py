import pytest

from tjfcalc.catalog import catalog, complex_c, p_complex, tjf
from tjfcalc.cells import CellComplex, localize, sphere
from tjfcalc.render import ChartSpec, RenderError, chart_spec, render_ascii, render_svg


def strokes(svg):
    return svg.count("<path ") + svg.count("<line ")


class TestChartSpec:
    def test_every_line_references_a_dot(self):
        with pytest.raises(RenderError):
            ChartSpec([("a", 0, 0)], [("a", "b", None)])

    def test_equal_degrees_take_separate_columns(self):
        spec = chart_spec(catalog("tmf_c3_3local"))
        zero = [c for _, d, c in spec.dots if d == 0]
        assert len(set(zero)) == 3

    def test_summands_side_by_side(self):
        spec = chart_spec(p_complex(0))
        assert spec.meta["columns"] == 2

    def test_zero_lines_dropped(self):
        spec = chart_spec(localize(p_complex(3), 3))
        assert [lab.value for _, _, lab in spec.lines] == ["alpha"]


class TestSvg:
    def test_tjf2(self):
        svg = render_svg(tjf(2))
        assert svg.count("<circle") == 2 and strokes(svg) == 1
        assert ">nu</text>" in svg

    def test_c(self):
        svg = render_svg(complex_c())
        assert svg.count("<circle") == 5 and strokes(svg) == 4

    def test_two_is_vertical(self):
        svg = render_svg(complex_c())
        assert svg.count("<line ") == 1

    def test_higher_degree_is_drawn_higher(self):
        svg = render_svg(p_complex(2))
        assert '<circle cx="64" cy="40" r="4" fill="black"><title>e4</title>' in svg
        assert '<circle cx="64" cy="136" r="4" fill="black"><title>e0</title>' in svg

    def test_deterministic(self):
        assert render_svg(complex_c()) == render_svg(complex_c())

    def test_round_trip(self):
        for name in ("C", "tmf_c3_3local", "tjf_4"):
            x = catalog(name)
            assert render_svg(CellComplex.from_json(x.to_json())) == render_svg(x)


class TestAscii:
    def test_shape(self):
        text = render_ascii(p_complex(2))
        rows = text.splitlines()
        assert rows[0] == "P2"
        assert rows[1].startswith("4 | o") and rows[-2].startswith("0 | o")
        assert rows[-1] == "labels: n=nu"

    def test_three_local_chart(self):
        text = render_ascii(catalog("tmf_c3_3local"))
        rows = text.splitlines()[1:-1]
        assert sum(r.split("|", 1)[1].count("o") for r in rows) == 9
        assert text.endswith("labels: a=alpha\n")

    def test_round_trip(self):
        x = catalog("tmf_c2")
        assert render_ascii(CellComplex.from_json(x.to_json())) == render_ascii(x)

    def test_single_cell(self):
        assert render_ascii(sphere(3)).splitlines()[-1] == "3 | o"

    def test_empty(self):
        assert render_ascii(CellComplex(())) == "(empty complex)\n"
