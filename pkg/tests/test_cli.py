import json
import subprocess
import sys

import pytest

from morita.bibundle import bundle_from_functor
from morita.catalog import antipodal_c6, mobius_action, z4_on_c6
from morita.cli import main
from morita.cocycle import GridCover, coboundary
from morita.generators import translation_projection
from morita.cocycle import constant_cocycle
from morita.groupoid import (GroupoidFunctor, SetAction, group_as_groupoid, inclusion_functor,
                             pair_groupoid, point_groupoid, translation_groupoid, unit_groupoid)
from morita.groups import cyclic
from morita.io import (action_to_json, bibundle_to_json, cocycle_to_json, complex_to_json,
                       functor_to_json, groupoid_to_json, write_json)
from morita.simplicial import ComplexAction, SimplicialComplex, grid_complex, rp2_complex


@pytest.fixture
def files(tmp_path):
    def put(name, doc):
        p = tmp_path / name
        write_json(doc, str(p))
        return str(p)
    return put


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_ok_and_invalid(capsys, files):
    p = files("g.json", groupoid_to_json(pair_groupoid(range(3))))
    code, out, _ = run(capsys, "validate", p)
    assert code == 0 and "groupoid.v1: valid" in out
    d = groupoid_to_json(pair_groupoid(range(2)))
    d["comp"][0][2] = d["comp"][1][2]
    code, out, _ = run(capsys, "validate", files("bad.json", d))
    assert code == 1 and "INVALID" in out


def test_validate_bibundle_reports_principality(capsys, files):
    F = translation_projection(SetAction.from_function(cyclic(2), 2, lambda g, x: (x + g) % 2))
    code, out, _ = run(capsys, "validate", files("b.json", bibundle_to_json(bundle_from_functor(F))))
    # the free Z2-set is equivalent to a point, not to Z2 => *, so <F> is principal only
    assert code == 0 and "principal: True, biprincipal: False" in out


def test_input_errors_exit_2(capsys, tmp_path, files):
    bad = tmp_path / "x.json"
    bad.write_text("{ nope")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "x.json:1:3" in err
    code, _, err = run(capsys, "orbits", str(tmp_path / "missing.json"))
    assert code == 2
    p = files("g.json", groupoid_to_json(pair_groupoid(range(2))))
    code, _, err = run(capsys, "isotropy", p, "--at", "9")
    assert code == 2 and "unknown object" in err
    code, _, err = run(capsys, "catalog", "run", "nothing")
    assert code == 2 and "unknown catalog entry" in err


def test_orbits_and_isotropy(capsys, files):
    A = SetAction.from_function(cyclic(4), 2, lambda g, x: (x + g) % 2)
    p = files("a.json", groupoid_to_json(translation_groupoid(A)))
    code, out, _ = run(capsys, "orbits", p)
    assert code == 0 and out.startswith("1 orbits")
    code, out, _ = run(capsys, "isotropy", p, "--at", "0")
    assert code == 0 and "order 2" in out and "Z2" in out


def test_pi1_modes(capsys, files):
    code, out, _ = run(capsys, "pi1", files("x.json", complex_to_json(rp2_complex())))
    assert code == 0 and out.splitlines()[0] == "pi1 = Z/2"
    g = files("g.json", groupoid_to_json(group_as_groupoid(cyclic(3))))
    code, out, _ = run(capsys, "pi1", g, "--nerve")
    assert "pi1 = Z/3" in out
    code, out, _ = run(capsys, "pi1", g, "--json")
    doc = json.loads(out)
    assert doc["schema"] == "report.v1" and doc["data"]["pi1_ab"] == "Z/3"
    A = mobius_action()
    a = files("a.json", action_to_json(A))
    x = files("p.json", complex_to_json(A.complex))
    code, out, _ = run(capsys, "pi1", x, "--borel", "--action", a)
    assert code == 0 and out.splitlines()[0] == "pi1 = Z/2"
    code, _, err = run(capsys, "pi1", x, "--borel")
    assert code == 2


def test_morita_equivalent_and_not(capsys, files, tmp_path):
    a = files("a.json", groupoid_to_json(pair_groupoid(range(3))))
    b = files("b.json", groupoid_to_json(point_groupoid()))
    code, out, _ = run(capsys, "morita", a, b)
    assert code == 0 and out.splitlines()[0] == "equivalent"
    assert json.loads(out.splitlines()[2])["schema"] == "bibundle.v1"
    w = str(tmp_path / "w.json")
    code, out, _ = run(capsys, "morita", a, b, "--out", w)
    assert code == 0
    code, out, _ = run(capsys, "validate", w)
    assert "biprincipal: True" in out
    c = files("c.json", groupoid_to_json(unit_groupoid(range(2))))
    code, out, _ = run(capsys, "morita", a, c)
    assert code == 1 and out.startswith("not equivalent")


def test_tensor(capsys, files):
    F = translation_projection(SetAction.from_function(cyclic(2), 2, lambda g, x: (x + g) % 2))
    P = bundle_from_functor(F)
    U = bundle_from_functor(GroupoidFunctor.identity(F.source))
    q = files("q.json", bibundle_to_json(U))
    p = files("p.json", bibundle_to_json(P))
    code, out, _ = run(capsys, "tensor", q, p)
    assert code == 0 and json.loads(out)["schema"] == "bibundle.v1"
    code, _, err = run(capsys, "tensor", p, p)
    assert code == 2


def test_eff_command(capsys, files, tmp_path):
    a = files("a.json", action_to_json(z4_on_c6()))
    out_path = str(tmp_path / "e.json")
    code, out, _ = run(capsys, "eff", "--action", a, "--out", out_path)
    assert code == 0 and "ineffective kernel: order 2" in out
    code, out, _ = run(capsys, "check-seq", "example4", "--action", out_path)
    assert code == 0
    X = SimplicialComplex(5, [(0, k) for k in range(1, 5)])
    A = ComplexAction.from_function(cyclic(2), X, lambda g, v: [0, 1, 2, 4, 3][v] if g else v)
    code, out, _ = run(capsys, "eff", "--action", files("n.json", action_to_json(A)))
    assert code == 1 and "non-uniform" in out


def test_lift_cocycle_command(capsys, files):
    phi = translation_projection(SetAction.from_function(cyclic(2), 2, lambda g, x: (x + g) % 2))
    cov = GridCover(2, 2)
    c = coboundary(cov, phi.target, {mu: i % 2 for i, mu in enumerate(cov.cells)})
    f = files("f.json", functor_to_json(phi))
    k = files("c.json", cocycle_to_json(c))
    code, out, _ = run(capsys, "lift-cocycle", "--functor", f, "--cocycle", k)
    assert code == 0 and json.loads(out)["schema"] == "cocycle.v1"
    # the inclusion of one point of Pair(2) cannot lift a cocycle sitting at the other point
    G = pair_groupoid(range(2))
    _, inc = inclusion_functor(G, [0])
    f2 = files("f2.json", functor_to_json(inc))
    k2 = files("c2.json", cocycle_to_json(constant_cocycle(cov, G, 1)))
    code, out, _ = run(capsys, "lift-cocycle", "--functor", f2, "--cocycle", k2)
    assert code == 1 and "no lift" in out


def test_check_seq(capsys, files):
    a = files("a.json", action_to_json(antipodal_c6()))
    code, out, _ = run(capsys, "check-seq", "example4", "--action", a)
    assert code == 0 and "exact-abelian-only: pass; hom-signature: pass" in out
    e = files("e.json", action_to_json(z4_on_c6()))
    code, out, _ = run(capsys, "check-seq", "eff", "--action", e)
    assert code == 0
    t = files("t.json", action_to_json(ComplexAction.trivial(cyclic(2), grid_complex(2, 2))))
    code, out, _ = run(capsys, "check-seq", "eff", "--action", t)
    assert code == 1 and "not-checked" in out


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "mobius" in out
    code, out, _ = run(capsys, "catalog", "run", "mobius")
    assert code == 0 and "pi1 = Z/2" in out
    code, first, _ = run(capsys, "catalog", "run", "--all")
    assert code == 0
    _, second, _ = run(capsys, "catalog", "run", "--all")
    assert first == second
    code, out, _ = run(capsys, "catalog", "run", "eff-z4-c6", "--json")
    assert json.loads(out)["status"] == "pass"


def test_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--json", "catalog", "run", "group-z2")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "morita", "catalog", "run", "mobius"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "pi1 = Z/2" in r.stdout
