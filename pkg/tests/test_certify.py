import jsonschema
import pytest

from fpgroup.certify import (INCONCLUSIVE, IRREDUNDANT, JUST_FINITE, NOT_JUST_FINITE, REDUNDANT,
                             Budget, Finite, InfiniteViaAmalgam, InfiniteViaSubgroup,
                             InfiniteViaZSurjection, Unknown, case2_map, certify_case1_amalgam,
                             certify_infinite, check_irredundant, just_finite_report,
                             report_schema, validate_certificate, verify_presents_same_group)
from fpgroup.presentation import remove_relator
from fpgroup.syntax import parse_presentation
from fpgroup.transform import just_finite_transform

from fixtures import D8_CLASSICAL, D8_JUST_FINITE, D8_TRANSFORMED, POOL

INF_DIHEDRAL = "< s, t | t^2, t^-1*s*t*s >"
SCHEMA = report_schema()


@pytest.fixture(scope="module")
def d8():
    return parse_presentation(D8_CLASSICAL)


@pytest.fixture(scope="module")
def d8_record(d8):
    return just_finite_transform(d8)


class TestVerifySame:
    def test_transform(self, d8, d8_record):
        assert verify_presents_same_group(d8, d8_record.output) is True

    def test_order_mismatch(self):
        assert verify_presents_same_group(parse_presentation("< x | x^2 >"),
                                          parse_presentation("< x | x^2, x^3 >")) is False

    def test_reflexive(self, d8):
        assert verify_presents_same_group(d8, d8) is True

    def test_extra_generator_not_trivial(self):
        # same order 2, but b is not the identity
        p = parse_presentation("< x | x^2 >")
        q = parse_presentation("< x, b | x, b^2 >")
        assert verify_presents_same_group(p, q) is False

    def test_unknown_on_overflow(self):
        p = parse_presentation("< x | >")
        assert verify_presents_same_group(p, p, Budget(max_cosets=50)) is None

    def test_alphabet_precondition(self, d8):
        with pytest.raises(ValueError):
            verify_presents_same_group(d8, parse_presentation("< a, b | a^2, b^2 >"))


class TestIrredundant:
    def test_d8(self, d8):
        verdicts = check_irredundant(d8)
        assert [v.status for v in verdicts] == [IRREDUNDANT] * 3
        assert verdicts[0].h_r_order == 16
        assert verdicts[0].not_isomorphic is True

    def test_power(self):
        verdicts = check_irredundant(parse_presentation("< x | x^2, x^4 >"))
        assert verdicts[1].status == REDUNDANT
        assert verdicts[1].not_isomorphic is False

    def test_duplicate(self):
        p = parse_presentation("< x, y | x^-1*y*x*y^-2, x^3, x^3 >")
        verdicts = check_irredundant(p)
        assert verdicts[2].status == REDUNDANT
        assert verdicts[1].status == REDUNDANT
        assert verdicts[0].status == IRREDUNDANT

    @pytest.mark.parametrize("name", sorted(POOL))
    def test_pool_irredundant(self, name):
        p = parse_presentation(POOL[name][0])
        assert all(v.status == IRREDUNDANT for v in check_irredundant(p))


class TestCertifyInfinite:
    def test_infinite_dihedral(self):
        p = parse_presentation(INF_DIHEDRAL)
        cert = certify_infinite(p)
        assert isinstance(cert, InfiniteViaSubgroup)
        assert (cert.index, cert.subgroup_free_rank) == (2, 1)
        assert validate_certificate(p, cert)

    def test_d8_second_removal(self, d8):
        p = remove_relator(d8, 1)
        cert = certify_infinite(p)
        assert isinstance(cert, InfiniteViaZSurjection) and cert.free_rank == 1
        assert validate_certificate(p, cert)

    def test_d8_finite(self, d8):
        assert certify_infinite(d8) == Finite(8)
        assert validate_certificate(d8, Finite(8))
        assert not validate_certificate(d8, Finite(16))

    def test_free_product(self, d8):
        p = remove_relator(d8, 2)
        cert = certify_infinite(p)
        assert isinstance(cert, InfiniteViaSubgroup) and cert.index <= 8
        assert validate_certificate(p, cert)

    def test_unknown(self):
        # Burnside-like group out of reach of small budgets, finite abelianization
        p = parse_presentation("< a, b | a^2, b^3, (a*b)^7 >")
        cert = certify_infinite(p, Budget(max_cosets=200, max_index=3))
        assert isinstance(cert, Unknown)
        assert cert.witness()["exhausted"] == ["max_index", "max_cosets"]
        assert not validate_certificate(p, cert)

    def test_wrong_witness_rejected(self, d8):
        p = parse_presentation(INF_DIHEDRAL)
        cert = certify_infinite(p)
        assert not validate_certificate(remove_relator(d8, 2), cert)


class TestAmalgam:
    def test_first_relator(self, d8_record):
        cert = certify_case1_amalgam(d8_record, 0)
        assert isinstance(cert, InfiniteViaAmalgam)
        assert (cert.k, cert.amalgam_index, cert.h_r_order, cert.r_index_in_h_r) == (2, 3, 16, 8)
        k1 = remove_relator(d8_record.output, 1)
        assert validate_certificate(k1, cert)

    def test_free_product_branch(self, d8_record):
        cert = certify_case1_amalgam(d8_record, 2)
        assert isinstance(cert, InfiniteViaAmalgam)
        assert cert.k is None and cert.h_r_certificate.is_infinite
        assert validate_certificate(remove_relator(d8_record.output, 5), cert)

    def test_out_of_range(self, d8_record):
        with pytest.raises(IndexError):
            certify_case1_amalgam(d8_record, 3)

    def test_post_init_guards(self, d8_record):
        cert = certify_case1_amalgam(d8_record, 0)
        with pytest.raises(ValueError):
            InfiniteViaAmalgam(0, cert.h_r, cert.relator, 2, 4, 16, 8)
        with pytest.raises(ValueError):
            InfiniteViaAmalgam(0, cert.h_r, cert.relator, 1, 1, 16, 16)
        with pytest.raises(ValueError):
            InfiniteViaAmalgam(0, cert.h_r, cert.relator, None, None, None)

    def test_tampered_certificate_rejected(self, d8_record):
        cert = certify_case1_amalgam(d8_record, 0)
        # right relator index, wrong presentation: deleting the b-conjugation relator
        assert not validate_certificate(remove_relator(d8_record.output, 0), cert)

    def test_case2_map(self, d8_record):
        assert case2_map(d8_record, 1) == {"b1": 1}


class TestReport:
    def test_transformed_d8(self):
        rep = just_finite_report(parse_presentation(D8_TRANSFORMED))
        assert rep.summary == JUST_FINITE
        assert rep.order == 8
        assert len(rep.verdicts) == 6
        assert all(v.certificate.is_infinite for v in rep.verdicts)
        assert [v.certificate.kind for v in rep.verdicts[0::2]] == ["infinite-z-surjection"] * 3
        for v in rep.verdicts:
            assert validate_certificate(v.removed, v.certificate)
        jsonschema.validate(rep.as_dict(), SCHEMA)

    def test_second_d8(self):
        rep = just_finite_report(parse_presentation(D8_JUST_FINITE))
        assert rep.summary == JUST_FINITE
        first = rep.verdicts[0].certificate
        assert isinstance(first, InfiniteViaSubgroup) and first.index == 2
        assert all(v.certificate.is_infinite for v in rep.verdicts)
        assert rep.transform is None
        jsonschema.validate(rep.as_dict(), SCHEMA)

    def test_d8_classical(self, d8):
        rep = just_finite_report(d8)
        assert rep.summary == NOT_JUST_FINITE
        assert rep.verdicts[0].certificate == Finite(16)
        assert rep.verdicts[1].certificate.kind == "infinite-z-surjection"
        assert rep.verdicts[2].certificate.kind == "infinite-subgroup"
        jsonschema.validate(rep.as_dict(), SCHEMA)

    def test_inconclusive(self):
        rep = just_finite_report(parse_presentation("< a, b | a^2, b^3, (a*b)^7 >"),
                                 Budget(max_cosets=200, max_index=2))
        assert rep.summary == INCONCLUSIVE
        assert rep.order is None and rep.notes
        jsonschema.validate(rep.as_dict(), SCHEMA)

    def test_redundant_input_refuted(self):
        p = parse_presentation("< a, b | a^2, b^2, (a*b)^2, a^4 >")
        rep = just_finite_report(just_finite_transform(p).output)
        # a^4 = 1 already holds, so the surviving a^-4*b3*a^4 = b3^2 forces b3 = 1
        assert rep.verdicts[7].certificate == Finite(4)
        assert rep.summary == NOT_JUST_FINITE
        assert any("redundant" in n for n in rep.notes)

    def test_cyclic_input_noted(self):
        rep = just_finite_report(just_finite_transform(parse_presentation("< x | x^2 >")).output)
        assert any("cyclic" in n for n in rep.notes)

    def test_record_mismatch(self, d8, d8_record):
        with pytest.raises(ValueError):
            just_finite_report(d8, record=d8_record)

    @pytest.mark.parametrize("name", sorted(POOL))
    def test_pool_transforms_just_finite(self, name):
        rec = just_finite_transform(parse_presentation(POOL[name][0]))
        rep = just_finite_report(rec.output)
        assert rep.summary == JUST_FINITE
        assert rep.order == POOL[name][1]
        jsonschema.validate(rep.as_dict(), SCHEMA)
