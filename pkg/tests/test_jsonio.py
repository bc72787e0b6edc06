import json
import random
from fractions import Fraction

from conftest import octagon, random_polygon
from udnorm import jsonio
from udnorm.certify import certify_box, sample_verify, witness_norm
from udnorm.colored import color_cover
from udnorm.dependence import DependenceSystem
from udnorm.norms import AngleBound, NormOracle, square
from udnorm.pointsets import flat_side_quadratic
from udnorm.udg import build_udg

TOY = DependenceSystem(ell=1, indices=(1, 2, 3), coeffs=((2,), (-1,)))


class TestRoundTrips:
    def test_polygon(self):
        rng = random.Random(1)
        for _ in range(20):
            B = random_polygon(rng)
            assert jsonio.polygon_from_json(jsonio.polygon_to_json(B)) == B

    def test_polygon_schema(self, octagon):
        d = jsonio.polygon_to_json(octagon)
        assert set(d) == {"m", "normals", "offsets"}
        assert d["m"] == 4
        for n in d["normals"]:
            assert isinstance(n[0], str) and isinstance(n[1], str)

    def test_points(self):
        P = flat_side_quadratic(8)
        assert jsonio.points_from_json(jsonio.points_to_json(P)) == P

    def test_points_random_rationals(self):
        rng = random.Random(3)
        from udnorm.pointsets import PointSeq
        from udnorm.ratlin import Vec2
        pts = []
        seen = set()
        while len(pts) < 30:
            p = Vec2.of(Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997)),
                        Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997)))
            if (p.x, p.y) not in seen:
                seen.add((p.x, p.y))
                pts.append(p)
        P = PointSeq.of(pts)
        assert jsonio.points_from_json(jsonio.points_to_json(P)) == P

    def test_oracles(self):
        for o in (NormOracle.euclidean(), NormOracle.pnorm(Fraction(5, 2)),
                  NormOracle.of_polygon(square())):
            assert jsonio.oracle_from_json(jsonio.oracle_to_json(o)) == o

    def test_udg(self):
        P = flat_side_quadratic(8)
        G = build_udg(P, square())
        assert jsonio.udg_from_json(jsonio.udg_to_json(G)) == G
        abstract = G.without_directions()
        assert jsonio.udg_from_json(jsonio.udg_to_json(abstract)) == abstract

    def test_graph_and_cover(self):
        G = build_udg(flat_side_quadratic(10), square())
        from udnorm.colored import EdgeColoredGraph
        H = EdgeColoredGraph.from_udg(G)
        assert jsonio.graph_from_json(jsonio.graph_to_json(H)) == H
        res = color_cover(H, Fraction(2001, 1000), Fraction(1, 4))
        assert jsonio.cover_from_json(jsonio.cover_to_json(res)) == res

    def test_system(self):
        assert jsonio.system_from_json(jsonio.system_to_json(TOY)) == TOY

    def test_certificate_and_report(self, octagon):
        cert = witness_norm(certify_box(TOY, octagon, Fraction(1, 100),
                                        AngleBound.of(Fraction(5, 9))))
        back = jsonio.certificate_from_json(jsonio.certificate_to_json(cert))
        assert back == cert
        rep = sample_verify(cert, 5, seed=0)
        payload = jsonio.report_to_json(rep)
        assert payload["counterexample_found"] is False
        json.dumps(payload)  # serializable

    def test_canonical_rational_strings(self, octagon):
        d = jsonio.polygon_to_json(octagon)
        blob = json.dumps(d, sort_keys=True)
        again = json.dumps(
            jsonio.polygon_to_json(jsonio.polygon_from_json(d)),
            sort_keys=True)
        assert blob == again


class TestFiles:
    def test_atomic_write_and_read(self, tmp_path):
        path = tmp_path / "nested" / "out.json"
        jsonio.write_json(str(path), {"a": 1})
        assert jsonio.read_json(str(path)) == {"a": 1}
        leftovers = [p for p in path.parent.iterdir() if p.suffix == ".tmp"]
        assert not leftovers

    def test_color_csv(self, tmp_path):
        G = build_udg(flat_side_quadratic(8), square())
        path = tmp_path / "colors.csv"
        jsonio.write_color_csv(str(path), G)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "color,direction_x,direction_y,edges"
        assert len(lines) == G.k + 1
        total = sum(int(line.rsplit(",", 1)[1]) for line in lines[1:])
        assert total == G.edge_count

    def test_svg(self, tmp_path):
        P = flat_side_quadratic(6)
        G = build_udg(P, square())
        svg = jsonio.render_svg(P, G)
        assert svg.startswith("<svg")
        assert svg.count("<circle") == len(P)
        assert svg.count("<line") == G.edge_count
