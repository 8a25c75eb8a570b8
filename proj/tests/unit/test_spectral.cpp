#include <doctest.h>

#include <cmath>

#include "covmark/spectral.hpp"

using namespace covmark;

namespace {

// Hand-built automaton: origin -> t1 -> t2 -> {c1 <-> c2}. The two-vertex
// cycle is the only contributing block; t1, t2 form a transient tail.
MarkovAutomaton tail_automaton() {
    GeneratorTable gens;
    gens.add("a");
    gens.add("A");
    gens.set_inverse(0, 1);
    MarkovAutomaton a({"v0", "t1", "t2", "c1", "c2"}, 0, gens);
    a.add_edge(0, 1, 0);
    a.add_edge(1, 2, 0);
    a.add_edge(2, 3, 0);
    a.add_edge(3, 4, 0);
    a.add_edge(4, 3, 0);
    return a;
}

} // namespace

TEST_CASE("scc decomposition of the built-in automata") {
    auto f2 = analyze_spectrum(build_free_group_automaton(2));
    CHECK(f2.decomposition.block_count() == 2);
    // Children-first order: the 4-vertex generator block precedes {v0}.
    CHECK(f2.decomposition.blocks[0].size() == 4);
    CHECK(f2.decomposition.blocks[1] == std::vector<int>{0});

    auto z = analyze_spectrum(build_free_group_automaton(1));
    CHECK(z.decomposition.block_count() == 3);

    auto z2 = analyze_spectrum(build_free_abelian_automaton(2));
    CHECK(z2.decomposition.block_count() == 5);
    for (int j = 0; j < 5; ++j) CHECK(z2.decomposition.blocks[j].size() == 1);
}

TEST_CASE("permuted matrix is block lower triangular and reassembles") {
    for (const auto& a :
         {build_free_group_automaton(2), build_free_abelian_automaton(2),
          build_free_product_automaton({2, 3}), tail_automaton()}) {
        Eigen::MatrixXi m = a.transition_matrix();
        auto d = scc_decompose(m);
        const int n = m.rows();

        // Entries above the diagonal blocks vanish.
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                const int bp = d.block_of[d.order[p]], bq = d.block_of[d.order[q]];
                if (bq > bp) CHECK(d.permuted(p, q) == 0);
            }

        // Reassembly from diagonal blocks and couplings is exact.
        Eigen::MatrixXi rebuilt = Eigen::MatrixXi::Zero(n, n);
        for (int j = 0; j < d.block_count(); ++j) {
            const int s = d.block_start[j];
            const int bs = static_cast<int>(d.blocks[j].size());
            rebuilt.block(s, s, bs, bs) = d.block_matrix(j);
            for (int i = j + 1; i < d.block_count(); ++i)
                rebuilt.block(d.block_start[i], s, static_cast<int>(d.blocks[i].size()), bs) =
                    d.coupling(i, j);
        }
        CHECK(rebuilt == d.permuted);

        // Permutation applied to the original matrix reproduces `permuted`.
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) CHECK(d.permuted(p, q) == m(d.order[p], d.order[q]));
    }
}

TEST_CASE("spectral radii of the stock blocks") {
    auto f2 = analyze_spectrum(build_free_group_automaton(2));
    CHECK(f2.report.rho == doctest::Approx(3.0).epsilon(1e-9));

    Eigen::MatrixXd b23(3, 3);
    b23 << 0, 1, 1, 1, 0, 0, 1, 0, 0;
    CHECK(spectral_radius(b23) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    Eigen::MatrixXd zero1(1, 1);
    zero1 << 0;
    CHECK(spectral_radius(zero1) == 0.0);

    CHECK_THROWS_AS(spectral_radius(b23, 1e-12, /*max_iter=*/1), convergence_error);
}

TEST_CASE("growth rates and contributing blocks") {
    auto f2 = analyze_spectrum(build_free_group_automaton(2));
    CHECK(f2.report.rho == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f2.report.contributing_count == 1);
    CHECK(f2.report.rho1 == 0.0);

    auto z2 = analyze_spectrum(build_free_abelian_automaton(2));
    CHECK(z2.report.rho == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(z2.report.contributing_count == 4);

    auto p23 = analyze_spectrum(build_free_product_automaton({2, 3}));
    CHECK(p23.report.rho == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(p23.report.contributing_count == 1);

    auto p222 = analyze_spectrum(build_free_product_automaton({2, 2, 2}));
    CHECK(p222.report.rho == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(p222.report.contributing_count == 1);
}

TEST_CASE("block periods") {
    auto f2 = analyze_spectrum(build_free_group_automaton(2));
    for (int j = 0; j < f2.decomposition.block_count(); ++j)
        if (f2.report.contributing[j]) CHECK(f2.report.period[j] == 1);

    auto p23 = analyze_spectrum(build_free_product_automaton({2, 3}));
    for (int j = 0; j < p23.decomposition.block_count(); ++j)
        if (p23.report.contributing[j]) CHECK(p23.report.period[j] == 2);
}

TEST_CASE("single crossing holds for hyperbolic families and fails for Z^2") {
    for (const auto& a :
         {build_free_group_automaton(2), build_free_group_automaton(3),
          build_free_group_automaton(1), build_free_product_automaton({2, 3}),
          build_free_product_automaton({2, 2, 2})}) {
        auto s = analyze_spectrum(a);
        CHECK(verify_single_crossing(a.transition_matrix(), s.decomposition,
                                     s.report.contributing)
                  .ok);
    }

    auto z2 = build_free_abelian_automaton(2);
    auto s = analyze_spectrum(z2);
    auto rep = verify_single_crossing(z2.transition_matrix(), s.decomposition,
                                      s.report.contributing);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.witness.size() >= 2);
    // The witness starts in one contributing singleton and ends in another.
    const int first = rep.witness.front(), last = rep.witness.back();
    CHECK(s.report.contributing[s.decomposition.block_of[first]]);
    CHECK(s.report.contributing[s.decomposition.block_of[last]]);
    CHECK(s.decomposition.block_of[first] != s.decomposition.block_of[last]);
    // Witness is a real path.
    Eigen::MatrixXi m = z2.transition_matrix();
    for (std::size_t i = 0; i + 1 < rep.witness.size(); ++i)
        CHECK(m(rep.witness[i], rep.witness[i + 1]) == 1);
}

TEST_CASE("non-contributing path counts vanish beyond the transient length") {
    for (const auto& a :
         {build_free_group_automaton(2), build_free_abelian_automaton(2),
          build_free_product_automaton({2, 3})}) {
        auto s = analyze_spectrum(a);
        auto rep = noncontributing_path_counts(a, s.decomposition, s.report.contributing, 12);
        for (int n = 1; n <= 12; ++n) CHECK(rep.counts[n] == 0);
        CHECK(rep.bound_holds);
    }

    auto tail = tail_automaton();
    auto s = analyze_spectrum(tail);
    CHECK(s.report.rho == doctest::Approx(1.0));
    auto rep = noncontributing_path_counts(tail, s.decomposition, s.report.contributing, 12);
    CHECK(rep.counts[1] == 1); // v0 -> t1
    CHECK(rep.counts[2] == 1); // v0 -> t1 -> t2
    for (int n = 3; n <= 12; ++n) CHECK(rep.counts[n] == 0);
    CHECK(rep.bound_holds);
}

TEST_CASE("perron data") {
    auto f2 = analyze_spectrum(build_free_group_automaton(2));
    int big = -1;
    for (int j = 0; j < f2.decomposition.block_count(); ++j)
        if (f2.decomposition.blocks[j].size() == 4) big = j;
    REQUIRE(big >= 0);
    auto pd = perron_vector(f2.decomposition.block_matrix(big));
    CHECK(pd.rho == doctest::Approx(3.0).epsilon(1e-12));
    for (int i = 0; i < 4; ++i) CHECK(pd.w(i) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 4; ++i) CHECK(pd.R.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
    // Residual bound.
    Eigen::VectorXd resid =
        f2.decomposition.block_matrix(big).cast<double>() * pd.w - pd.rho * pd.w;
    CHECK(resid.cwiseAbs().maxCoeff() <= 1e-10);

    // 1x1 block with a self-loop.
    Eigen::MatrixXi one(1, 1);
    one << 1;
    auto pd1 = perron_vector(one);
    CHECK(pd1.w(0) == 1.0);
    CHECK(pd1.R(0, 0) == doctest::Approx(1.0));

    // Z2*Z3 block: w = (1, 1/sqrt2, 1/sqrt2) after max-normalization.
    Eigen::MatrixXi b23(3, 3);
    b23 << 0, 1, 1, 1, 0, 0, 1, 0, 0;
    auto pd23 = perron_vector(b23);
    CHECK(pd23.rho == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(pd23.w(0) == doctest::Approx(1.0));
    CHECK(pd23.w(1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    for (int i = 0; i < 3; ++i) CHECK(pd23.R.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));

    // Reducible or nilpotent blocks are rejected.
    Eigen::MatrixXi zero1(1, 1);
    zero1 << 0;
    CHECK_THROWS_AS(perron_vector(zero1), input_error);
    Eigen::MatrixXi upper(2, 2);
    upper << 0, 1, 0, 0;
    CHECK_THROWS_AS(perron_vector(upper), input_error);
}

TEST_CASE("growth constants") {
    auto f2 = build_free_group_automaton(2);
    auto gc = growth_constants(f2, 3.0, 30);
    CHECK(gc.c1 == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(gc.c2 == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

    auto z = build_free_group_automaton(1);
    auto gcz = growth_constants(z, 1.0, 30);
    CHECK(gcz.c1 == doctest::Approx(2.0));
    CHECK(gcz.c2 == doctest::Approx(2.0));

    auto p23 = build_free_product_automaton({2, 3});
    auto gc23 = growth_constants(p23, std::sqrt(2.0), 40);
    CHECK(gc23.c2 / gc23.c1 <= 2.0);
}

TEST_CASE("empirical growth-rate diagnostic") {
    auto f2 = analyze_spectrum(build_free_group_automaton(2));
    CHECK(f2.report.empirical_within_10pct);
    // Z^2 grows polynomially: the diagnostic flags the mismatch but nothing
    // errors out.
    auto z2 = analyze_spectrum(build_free_abelian_automaton(2));
    CHECK_FALSE(z2.report.empirical_within_10pct);
}
