import io
import json
import random

import pytest

from quarticcm import CMFieldQuartic, FracIdeal, maximal_order, ppav_classes
from quarticcm.cmtypes import CMTypeCyclic, s_member
from quarticcm.orders import (conductor, orders_with_conductor_dividing, suborders)
from quarticcm.unitquot import residue_units
from quarticcm.workbench import (all_rows, annoying_prime_filter, isogeny_test, s_contained,
                                 table1, table1_pipeline, table2)
from quarticcm.workbench.cli import main
from quarticcm.workbench.isogeny import IsogenyError, check_witness
from quarticcm.workbench.primefilter import FilterError
from quarticcm.workbench.report import PASS, SKIP, VerificationReport
from quarticcm.workbench.tables import find_row
from quarticcm.workbench.verify import (VerificationError, verify_lemma_relindex,
                                        verify_thm_general, verify_thm_maximal)


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


# -- tables


def test_table_shapes():
    assert len(table1()) == 13 and len(table2()) == 7
    assert sum(r.has_indices for r in table1()) == 12
    assert len({r.key for r in all_rows()}) == 20
    assert find_row(5, 5, 5).has_indices is False
    assert str(find_row(8, 4, 2)) == "[8,4,2]"


@pytest.mark.parametrize("key,expected", [((8, 4, 2), (1, 1, 1)), ((37, 37, 333), (21, 3, 1)),
                                          ((5, 10, 20), (4, 4, 2)), ((13, 26, 52), (36, 36, 2))])
def test_table1_rows(key, expected):
    rep = table1_pipeline(find_row(*key))
    assert rep.verdict == PASS
    assert (rep.computed["i1"], rep.computed["i2"], rep.computed["i3"]) == expected


def test_table1_blank_row_skipped():
    assert table1_pipeline(find_row(5, 5, 5)).verdict == SKIP


def test_nonmaximal_o3_carries_no_polarised_class():
    """Every polarised class over the two non-maximal O''' lives on O_K: O''' is
    Gorenstein and has no principally polarised class of its own."""
    for key in [(5, 10, 20), (13, 26, 52)]:
        O3 = table1_pipeline(find_row(*key)).witnesses["O3"]
        assert O3.index() == 2
        assert FracIdeal(O3, O3.trace_dual()).is_invertible()
        assert ppav_classes(O3) == []
        assert ppav_classes(maximal_order(O3.field))


# -- report


def test_report_json_round_trip():
    rep = VerificationReport("c", {"x": 1}, {"q": __import__("fractions").Fraction(3, 4)},
                             {"q": 1}, PASS, {"w": [1, 2]})
    doc = json.loads(rep.dumps())
    assert set(doc) == {"claim", "inputs", "computed", "expected", "verdict", "witnesses"}
    assert doc["computed"]["q"] == "3/4"


# -- theorem checks


def test_thm_general_example53(example53):
    _, make = example53
    O, Op = make(3)
    rep = verify_thm_general(O, Op, 9)
    assert rep.verdict == PASS
    assert rep.computed["q"] == 1


def test_thm_general_rejects_zeta5_ring(zeta5_field, zeta5_orders):
    with pytest.raises(VerificationError):
        verify_thm_general(maximal_order(zeta5_field), zeta5_orders[0])


@pytest.mark.parametrize("AB", [(4, 2), (13, 13)])
def test_thm_maximal_sweep(AB):
    K = CMFieldQuartic(*AB)
    held = 0
    for O in orders_with_conductor_dividing(K, 6, cc_stable=True):
        rep = verify_thm_maximal(K, O)
        assert rep.verdict == PASS
        held += bool(rep.computed["s_condition"])
    assert held >= 1


def test_lemma_relindex_example52(example52):
    K, Oc = example52
    rep = verify_lemma_relindex(K, Oc)
    assert rep.computed["index"] == rep.computed["real_index"] == 5
    assert rep.verdict == PASS
    assert rep.witnesses["without_discriminant_divides"] is False


@pytest.mark.parametrize("AB", [(5, 5), (4, 2), (6, 7)])
def test_lemma_relindex_sweep(AB):
    K = CMFieldQuartic(*AB)
    seen = 0
    for n in (2, 3, 4, 5, 8, 9, 16, 25):
        for O in suborders(K, n, cc_stable=True):
            assert verify_lemma_relindex(K, O).verdict == PASS
            seen += 1
    assert seen >= 10


# -- S containment and the kernel


def test_s_contained_basic(zeta5_field, zeta5_orders):
    OK = maximal_order(zeta5_field)
    for O in zeta5_orders:
        assert s_contained(O, OK)
        # both orders are s-full, so the reverse holds as well
        assert s_contained(OK, O)


def test_principal_type_norms_in_s(field_842):
    """N_Phi(x O_K) lies in S_O for x in O coprime to f."""
    phi = CMTypeCyclic(field_842)
    OK = maximal_order(field_842)
    rng = random.Random(3)
    for O in orders_with_conductor_dividing(field_842, 6, cc_stable=True)[:8]:
        f = conductor(O)
        G = residue_units(O, f) if f > 1 else None
        xs = [G.element(g) for g in G.group.gens] if G else []
        while len(xs) < 6:
            x = sum((c * b for c, b in zip([rng.randint(-5, 5) for _ in range(4)], O.basis)),
                    field_842.zero)
            if x and FracIdeal.principal(OK, x).is_coprime_to(f):
                xs.append(x)
        for x in xs:
            assert s_member(FracIdeal.principal(OK, phi.type_norm(x)), O, f, phi)


# -- isogenies


def test_isogeny_identity(zeta5_field):
    c = ppav_classes(maximal_order(zeta5_field))[0]
    mu = isogeny_test(c, c, 1)
    assert mu is not None and mu * mu.conjugate() == 1


def test_isogeny_witnesses_resubstitute(zeta5_field, zeta5_orders):
    c0 = ppav_classes(maximal_order(zeta5_field))[0]
    O4, O5 = zeta5_orders
    c5 = ppav_classes(O5)[0]
    mu = isogeny_test(c5, c0, 5)
    assert mu is not None and check_witness(c5, c0, 5, mu)
    assert isogeny_test(c5, c0, 3) is None


def test_isogeny_different_fields(zeta5_field, field_842):
    a = ppav_classes(maximal_order(zeta5_field))[0]
    b = ppav_classes(maximal_order(field_842))[0]
    with pytest.raises(IsogenyError):
        isogeny_test(a, b, 2)


# -- prime filter


def test_filter_trivial_conductor(field_842):
    rep = annoying_prime_filter(field_842, 1)
    assert rep.computed["primes"] == []


def test_filter_conductor_six(field_842):
    rep = annoying_prime_filter(field_842, 6)
    assert rep.verdict == PASS
    assert set(rep.computed["primes"]) <= {2, 3}


def test_filter_needs_cyclic(example53):
    K, _ = example53
    with pytest.raises(FilterError):
        annoying_prime_filter(K, 6)


# -- CLI


def test_cli_field_info():
    code, out = run_cli("field", "info", "--field", "8,4,2", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["D"] == 8 and doc["galois"] == "cyclic" and doc["rel_disc_norm"] == 32


def test_cli_usage_errors():
    assert run_cli("field", "info", "--field", "9,4,2")[0] == 2
    assert run_cli("field", "info")[0] == 2
    assert run_cli("nonsense")[0] == 2
    assert run_cli("verify", "table1", "--row", "1,2,3")[0] == 2


def test_cli_table1_json_lines():
    code, out = run_cli("verify", "table1", "--all", "--json")
    docs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [d["verdict"] for d in docs].count("pass") == 12
    assert [d["verdict"] for d in docs].count("skip") == 1


def test_cli_ppav_and_plot(tmp_path):
    png = tmp_path / "orders.png"
    code, out = run_cli("omin", "--poly", "4,2", "--f", "4", "--json", "--plot", str(png))
    assert code == 0 and png.stat().st_size > 0
    code, out = run_cli("ppav", "--poly", "5,5", "--json")
    assert code == 0 and json.loads(out)["count"] == 1


def test_cli_zeta5_report(tmp_path):
    png = tmp_path / "z5.png"
    code, out = run_cli("verify", "zeta5", "--json", "--plot", str(png))
    doc = json.loads(out)
    assert code == 0 and doc["computed"]["count"] == 7
    assert png.exists()


def test_cli_isogeny():
    code, out = run_cli("isogeny", "--poly", "5,5", "--ell", "5", "--json")
    doc = json.loads(out.splitlines()[0])
    assert code == 0 and doc["computed"]["related"] is True
    code, out = run_cli("isogeny", "--poly", "5,5", "--order", "omin:5", "--ell", "5", "--json")
    doc = json.loads(out.splitlines()[0])
    assert doc["verdict"] == "skip" and doc["inputs"]["classes1"] == 0
