#include <doctest.h>

#include <random>

#include "covmark/algebra.hpp"

using namespace covmark;

namespace {

CMat pauli_z() {
    CMat z(2, 2);
    z << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
    return z;
}

} // namespace

TEST_CASE("state validation and evaluation") {
    auto tr2 = AlgebraState::tracial(2);
    CHECK(tr2.value(CMat::Identity(2, 2)).real() == doctest::Approx(1.0));

    auto diag = AlgebraState::diagonal({0.7, 0.3});
    CHECK(diag.value(pauli_z()).real() == doctest::Approx(0.4));

    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        CMat x = random_hermitian(2, rng);
        const Complex v = diag.value(x);
        const Complex vstar = diag.value(x.adjoint());
        CHECK(std::abs(v - std::conj(vstar)) <= 1e-14);
        CHECK(std::abs(v.imag()) <= 1e-14); // real on Hermitian observables
    }

    // Non-faithful, non-normalized and non-Hermitian densities are rejected.
    CHECK_THROWS_AS(AlgebraState::diagonal({1.0, 0.0}), input_error);
    CHECK_THROWS_AS(AlgebraState::diagonal({0.7, 0.7}), input_error);
    CMat skew(2, 2);
    skew << Complex(0.5, 0), Complex(0.1, 0), Complex(-0.1, 0), Complex(0.5, 0);
    CHECK_THROWS_AS(AlgebraState{skew}, input_error);
}

TEST_CASE("gns norm") {
    auto tr2 = AlgebraState::tracial(2);
    CHECK(tr2.gns_norm2(pauli_z()) == doctest::Approx(1.0));
    CHECK(tr2.gns_norm2(CMat::Zero(2, 2)) == 0.0);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        CMat x = random_hermitian(3, rng);
        auto tr3 = AlgebraState::tracial(3);
        CHECK(tr3.gns_norm2(x) <= op_norm(x) + 1e-12);
        if (max_abs(x) > 1e-9) CHECK(tr3.gns_norm2(x) > 0.0);
    }
}

TEST_CASE("state invariance") {
    auto tracial = AlgebraState::tracial(2);
    std::mt19937_64 rng(9);
    CHECK(check_state_invariance(tracial, Automorphism(haar_like_unitary(2, rng))));

    auto diag = AlgebraState::diagonal({0.7, 0.3});
    CMat swap(2, 2);
    swap << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
    CHECK_FALSE(check_state_invariance(diag, Automorphism(swap)));

    CMat phases(2, 2);
    phases << std::polar(1.0, 0.3), Complex(0, 0), Complex(0, 0), std::polar(1.0, 1.1);
    CHECK(check_state_invariance(diag, Automorphism(phases)));

    CHECK_THROWS_AS(Automorphism(2.0 * CMat::Identity(2, 2)), input_error);
}

TEST_CASE("random state-preserving unitaries") {
    for (const auto& s : {AlgebraState::tracial(3), AlgebraState::diagonal({0.5, 0.3, 0.2})}) {
        auto u1 = random_state_preserving_unitary(s, 42);
        auto u2 = random_state_preserving_unitary(s, 42);
        CHECK(max_abs(u1.unitary() - u2.unitary()) == 0.0); // same seed, same matrix
        CHECK(check_state_invariance(s, u1));
        auto u3 = random_state_preserving_unitary(s, 43);
        CHECK(max_abs(u1.unitary() - u3.unitary()) > 1e-3); // fixture seeds differ
        CHECK(check_state_invariance(s, u3));
    }
}

TEST_CASE("automorphisms preserve norms, positivity, identity") {
    auto s = AlgebraState::tracial(4);
    std::mt19937_64 rng(17);
    auto a = random_state_preserving_unitary(s, 99);
    CHECK(max_abs(a.apply(CMat::Identity(4, 4)) - CMat::Identity(4, 4)) <= 1e-12);
    for (int t = 0; t < 100; ++t) {
        CMat x = random_hermitian(4, rng);
        CHECK(op_norm(a.apply(x)) == doctest::Approx(op_norm(x)).epsilon(1e-10));
        CHECK(s.gns_norm2(a.apply(x)) == doctest::Approx(s.gns_norm2(x)).epsilon(1e-10));
        CMat pos = x * x;
        CHECK(lambda_min_hermitian(a.apply(pos)) >= -1e-10);
    }
}

TEST_CASE("multiplicativity of conjugation") {
    std::mt19937_64 rng(23);
    auto a = Automorphism(haar_like_unitary(3, rng));
    for (int t = 0; t < 20; ++t) {
        CMat x = random_hermitian(3, rng), y = random_hermitian(3, rng);
        CHECK(max_abs(a.apply(x * y) - a.apply(x) * a.apply(y)) <= 1e-12 * op_norm(x) * op_norm(y) +
                                                                      1e-12);
    }
}

TEST_CASE("word application is a homomorphism modulo group equality") {
    auto g = GroupOracle::free_group(2);
    auto s = AlgebraState::tracial(2);
    auto assign = ActionAssignment::seeded(g, s, 7);
    assign.require_relator_compatibility(g, 3);

    std::mt19937_64 rng(31);
    CMat x = random_hermitian(2, rng);
    CHECK(max_abs(assign.apply_word(Word{}, x) - x) == 0.0);
    // g g^-1 acts as the identity map.
    Word w{0, 1};
    CHECK(max_abs(assign.apply_word(w, x) - x) <= 1e-13);
    // A single generator acts by direct conjugation.
    const CMat u = assign.of(0).unitary();
    CHECK(max_abs(assign.apply_word(Word{0}, x) - u * x * u.adjoint()) == 0.0);

    // Exhaustive on the radius-4 ball: the product of letter unitaries equals
    // the normal-form unitary up to the homomorphism property.
    for (const auto& sphere : g.spheres(4))
        for (const Word& v : sphere) {
            Word doubled = v;
            doubled.insert(doubled.end(), v.begin(), v.end());
            const CMat lhs = assign.word_unitary(v) * assign.word_unitary(v);
            const CMat rhs = assign.word_unitary(g.reduce(doubled));
            CHECK(max_abs(lhs * x * lhs.adjoint() - rhs * x * rhs.adjoint()) <= 1e-11);
        }
}

TEST_CASE("seeded assignments respect family relators") {
    auto z2 = GroupOracle::free_abelian(2);
    auto st = AlgebraState::diagonal({0.5, 0.3, 0.2});
    auto assign = ActionAssignment::seeded(z2, st, 13);
    assign.require_state_invariance(st);
    assign.require_relator_compatibility(z2, 3);

    auto p23 = GroupOracle::free_product_cyclic({2, 3});
    auto tr = AlgebraState::tracial(3);
    auto ap = ActionAssignment::seeded(p23, tr, 5);
    ap.require_state_invariance(tr);
    ap.require_relator_compatibility(p23, 4);
    // Order-2 generator squares to a scalar conjugation; order-3 generator cubes.
    const CMat ua = ap.of(p23.generators().id_of("a")).unitary();
    CHECK(max_abs(ua * ua - CMat::Identity(3, 3)) <= 1e-12);
    const CMat ub = ap.of(p23.generators().id_of("b")).unitary();
    CHECK(max_abs(ub * ub * ub - CMat::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("involution incompatibility is rejected") {
    GeneratorTable gens;
    gens.add("a");
    gens.add("A");
    gens.set_inverse(0, 1);
    std::mt19937_64 rng(37);
    CMat u = haar_like_unitary(2, rng), v = haar_like_unitary(2, rng);
    std::vector<Automorphism> autos{Automorphism(u), Automorphism(v)};
    CHECK_THROWS_AS(ActionAssignment(gens, std::move(autos)), input_error);
}

TEST_CASE("operator order") {
    std::mt19937_64 rng(41);
    CMat x = random_hermitian(3, rng);
    CHECK(operator_order_leq(x, x, 0.0));
    CHECK(operator_order_leq(CMat::Zero(3, 3), x * x, 1e-12));
    CMat d1 = CMat::Zero(2, 2), d2 = CMat::Zero(2, 2);
    d1(0, 0) = 1;
    d2(1, 1) = 1;
    CHECK_FALSE(operator_order_leq(d1, d2, 1e-10));
    CMat nh(2, 2);
    nh << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
    CHECK_THROWS_AS(operator_order_leq(nh, nh, 0.0), input_error);
}
