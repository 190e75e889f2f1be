#include <catch2/catch_amalgamated.hpp>

#include "verma/virasoro.hpp"

using namespace verma;

TEST_CASE("vir bracket substitutions") {
    VirElement e2 = VirElement::mode(2), em2 = VirElement::mode(-2);
    VirElement b = vir_bracket(e2, em2);
    CHECK(b.modes.at(0) == Rational(4));
    CHECK(b.central == Rational(1, 2));

    VirElement b1 = vir_bracket(VirElement::mode(1), VirElement::mode(-1));
    CHECK(b1.modes.at(0) == Rational(2));
    CHECK(b1.central == Rational(0));
}

TEST_CASE("vir bracket antisymmetry and jacobi with central term") {
    auto jacobi = [](int a, int b, int c) {
        VirElement ea = VirElement::mode(a), eb = VirElement::mode(b), ec = VirElement::mode(c);
        VirElement s = vir_bracket(vir_bracket(ea, eb), ec) +
                       vir_bracket(vir_bracket(eb, ec), ea) +
                       vir_bracket(vir_bracket(ec, ea), eb);
        return s.is_zero();
    };
    CHECK(jacobi(3, -2, -1));
    for (int a = -6; a <= 6; ++a)
        for (int b = a; b <= 6; ++b) {
            VirElement anti = vir_bracket(VirElement::mode(a), VirElement::mode(b)) +
                              vir_bracket(VirElement::mode(b), VirElement::mode(a));
            CHECK(anti.is_zero());
            for (int c = b; c <= 6; ++c) CHECK(jacobi(a, b, c));
        }
    // the center is central
    CHECK(vir_bracket(VirElement::center(), VirElement::mode(3)).is_zero());
}

TEST_CASE("verma straightening on the printed examples") {
    VermaContext ctx = VermaContext::symbolic();
    const RatFn h = ctx.h();
    const RatFn c = ctx.c();

    PBWVector vac;
    vac.level = 0;
    vac.coords.emplace(Partition{}, ctx.scalar(Rational(1)));

    PBWVector e1v = verma_apply(1, vac, ctx);
    CHECK(e1v.level == 1);
    REQUIRE(e1v.coords.size() == 1);
    CHECK(e1v.coords.at(Partition{1}) == ctx.scalar(Rational(1)));

    PBWVector back = verma_apply(-1, e1v, ctx);
    CHECK(back.level == 0);
    CHECK(back.coords.at(Partition{}) == ctx.scalar(Rational(2)) * h);

    PBWVector e2v = verma_apply(2, vac, ctx);
    PBWVector down = verma_apply(-2, e2v, ctx);
    CHECK(down.coords.at(Partition{}) == ctx.scalar(Rational(4)) * h + ctx.scalar(Rational(1, 2)) * c);

    // e_0 eigenvalue is h + level
    PBWVector z = verma_apply(0, e2v, ctx);
    CHECK(z.coords.at(Partition{2}) == h + ctx.scalar(Rational(2)));
}

TEST_CASE("gram matrices at low level") {
    VermaContext ctx = VermaContext::symbolic();
    const RatFn h = ctx.h();
    const RatFn c = ctx.c();

    ExactMatrix g0 = gram_level(0, ctx);
    REQUIRE(g0.rows() == 1);
    CHECK(g0.at(0, 0) == ctx.scalar(Rational(1)));

    ExactMatrix g1 = gram_level(1, ctx);
    REQUIRE(g1.rows() == 1);
    CHECK(g1.at(0, 0) == ctx.scalar(Rational(2)) * h);

    // basis {e_2 v, e_1^2 v}
    ExactMatrix g2 = gram_level(2, ctx);
    REQUIRE(g2.rows() == 2);
    CHECK(g2.at(0, 0) == ctx.scalar(Rational(4)) * h + ctx.scalar(Rational(1, 2)) * c);
    CHECK(g2.at(0, 1) == ctx.scalar(Rational(6)) * h);
    CHECK(g2.at(1, 0) == ctx.scalar(Rational(6)) * h);
    CHECK(g2.at(1, 1) == ctx.scalar(Rational(8)) * h * h + ctx.scalar(Rational(4)) * h);

    // symmetry via independently straightened transposed entries
    auto parts = partitions_of(3);
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t j = 0; j < parts.size(); ++j)
            CHECK(shapovalov_entry(parts[i], parts[j], ctx) ==
                  shapovalov_entry(parts[j], parts[i], ctx));

    // entries are polynomials in (h, c); the central term contributes
    // half-integer coefficients (c/2 already appears at level 2), so only
    // polynomiality is a true invariant
    for (int n = 1; n <= 4; ++n) {
        ExactMatrix g = gram_level(n, ctx);
        for (size_t i = 0; i < g.rows(); ++i)
            for (size_t j = 0; j < g.cols(); ++j) {
                CHECK(g.at(i, j).is_polynomial());
                MPoly p = g.at(i, j).polynomial_value();
                for (const auto& [e, r] : p.terms()) {
                    Rational scaled = r * Rational(12);
                    CHECK(scaled.is_integer());
                }
            }
    }
}

TEST_CASE("level dimensions are partition numbers") {
    std::vector<int> expected = {1, 1, 2, 3, 5, 7};
    for (int n = 0; n <= 5; ++n) CHECK(partition_count(n) == expected[n]);
}

TEST_CASE("kac phi values") {
    VermaContext ctx = VermaContext::symbolic();
    CHECK(kac_phi(1, 1, KacVariant::Corrected, ctx) == ctx.h());
    CHECK(kac_phi(1, 1, KacVariant::AsPrinted, ctx) == ctx.h());

    std::vector<Rational> ising = {Rational(1, 16), Rational(1, 2)};
    CHECK(kac_phi(2, 1, KacVariant::Corrected, ctx).eval(ising) == Rational(0));
    CHECK(kac_phi(2, 1, KacVariant::AsPrinted, ctx).eval(ising) == Rational(-3, 8));

    // corrected variant is symmetric in (alpha, beta)
    CHECK(kac_phi(2, 3, KacVariant::Corrected, ctx) == kac_phi(3, 2, KacVariant::Corrected, ctx));

    // corrected phi_{1,2} is the level-2 determinant factor over 16
    const RatFn h = ctx.h();
    const RatFn c = ctx.c();
    RatFn factor = ctx.scalar(Rational(16)) * h * h +
                   ctx.scalar(Rational(2)) * (c - ctx.scalar(Rational(5))) * h + c;
    CHECK(kac_phi(1, 2, KacVariant::Corrected, ctx) == factor * ctx.scalar(Rational(1, 16)));

    // the corrected diagonal vanishes on the true degeneracy locus h = (1-c)/8
    RatFn diag = kac_phi(2, 2, KacVariant::Corrected, ctx);
    CHECK(diag == h + (c - ctx.scalar(Rational(1))) * ctx.scalar(Rational(3, 24)));
    CHECK(diag.eval(ising) == Rational(0));
    // while the printed diagonal does not
    CHECK(kac_phi(2, 2, KacVariant::AsPrinted, ctx).eval(ising) != Rational(0));
}

TEST_CASE("kac determinant comparison, corrected variant matches") {
    VermaContext ctx = VermaContext::symbolic();
    KacCompare k1 = kac_det_compare(1, KacVariant::Corrected, ctx);
    CHECK(k1.matches);
    CHECK(*k1.constant == Rational(2));

    KacCompare k2 = kac_det_compare(2, KacVariant::Corrected, ctx);
    CHECK(k2.matches);
    CHECK(*k2.constant == Rational(32));

    KacCompare k3 = kac_det_compare(3, KacVariant::Corrected, ctx);
    CHECK(k3.matches);
    CHECK(*k3.constant > Rational(0));

    KacCompare bad = kac_det_compare(2, KacVariant::AsPrinted, ctx);
    CHECK_FALSE(bad.matches);
    CHECK_FALSE(bad.quotient.is_constant());
}

TEST_CASE("singular vectors") {
    auto sv = singular_vectors(Rational(1, 16), Rational(1, 2), 2);
    REQUIRE(sv.kernel.size() == 1);
    REQUIRE(sv.primitive.size() == 1);
    // kernel normalized to leading coordinate 1 on e_2 v: e_2 v - 4/3 e_1^2 v
    const auto& v = sv.primitive[0];
    CHECK(v.coords.at(Partition{2}).constant_value() == Rational(1));
    CHECK(v.coords.at(Partition{1, 1}).constant_value() == Rational(-4, 3));

    CHECK(singular_vectors(Rational(1), Rational(2), 2).kernel.empty());

    auto lvl1 = singular_vectors(Rational(0), Rational(2), 1);
    REQUIRE(lvl1.kernel.size() == 1);
    REQUIRE(lvl1.primitive.size() == 1);
    CHECK(lvl1.primitive[0].coords.count(Partition{1}) == 1);
}

TEST_CASE("unitarity scans") {
    UnitarityScan good = unitarity_scan(Rational(1), Rational(2), 5);
    CHECK(good.verdict == UnitarityVerdict::PositiveDefinite);
    for (int n = 0; n < static_cast<int>(good.levels.size()); ++n) {
        CHECK(good.levels[n].n_pos == partition_count(n));
        CHECK(good.levels[n].n_neg == 0);
        CHECK(good.levels[n].n_zero == 0);
    }

    UnitarityScan bad = unitarity_scan(Rational(-1), Rational(2), 2);
    CHECK(bad.verdict == UnitarityVerdict::Indefinite);
    CHECK(bad.levels[1].n_neg == 1);

    UnitarityScan ising = unitarity_scan(Rational(1, 16), Rational(1, 2), 4);
    CHECK(ising.verdict == UnitarityVerdict::PositiveSemidefinite);
    for (const Inertia& sig : ising.levels) CHECK(sig.n_neg == 0);
    CHECK(ising.levels[0].n_zero == 0);
    CHECK(ising.levels[1].n_zero == 0);
    for (int n = 2; n <= 4; ++n) CHECK(ising.levels[n].n_zero >= 1);
}

TEST_CASE("degeneracy classification") {
    DegeneracyRecord none = degeneracy_classify(Rational(1), Rational(2), 6);
    CHECK(none.kind == DegeneracyRecord::Kind::None);

    DegeneracyRecord ising = degeneracy_classify(Rational(1, 16), Rational(1, 2), 4);
    CHECK(ising.kind == DegeneracyRecord::Kind::TwoOrMore);
    REQUIRE(ising.vanishing.size() == 2);
    CHECK(ising.vanishing[0] == std::make_pair(2, 1));
    CHECK(ising.vanishing[1] == std::make_pair(2, 2));
    REQUIRE_FALSE(ising.families.empty());
    for (const auto& fam : ising.families) {
        CHECK(fam.c12 == Rational(1, 2));
        CHECK(fam.h12 == Rational(1, 16));
    }

    DegeneracyRecord one = degeneracy_classify(Rational(0), Rational(2), 3);
    CHECK(one.kind == DegeneracyRecord::Kind::One);
    CHECK(one.vanishing[0] == std::make_pair(1, 1));
    CHECK(one.submodule == "V_{h+1,c}");
}

TEST_CASE("discrete series points") {
    auto [h1, c1] = discrete_series_point(3, 2, 1);
    CHECK(h1 == Rational(1, 16));
    CHECK(c1 == Rational(1, 2));

    auto [h2, c2] = discrete_series_point(3, 1, 1);
    CHECK(h2 == Rational(0));
    CHECK(c2 == Rational(1, 2));

    auto [h3, c3] = discrete_series_point(4, 1, 1);
    CHECK(h3 == Rational(0));
    CHECK(c3 == Rational(7, 10));

    CHECK_THROWS_AS(discrete_series_point(1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(discrete_series_point(3, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(discrete_series_point(3, 1, 3), std::invalid_argument);
}

TEST_CASE("parameter change a,b <-> h,c") {
    auto [h, c] = param_ab_to_hc(Rational(0), Rational(1, 12));
    CHECK(h == Rational(1, 12));
    CHECK(c == Rational(1));

    auto [a, b] = param_hc_to_ab(Rational(1, 16), Rational(1, 2));
    CHECK(a == Rational(1, 48));
    CHECK(b == Rational(1, 24));

    auto [h2, c2] = param_ab_to_hc(a, b);
    CHECK(h2 == Rational(1, 16));
    CHECK(c2 == Rational(1, 2));

    // on the first degenerate orbit a/b = -1/2 the weight is h = c/24
    Rational bb(5, 7);
    Rational aa = -bb / Rational(2);
    auto [hd, cd] = param_ab_to_hc(aa, bb);
    CHECK(hd == cd / Rational(24));
}

TEST_CASE("deeper radical splits into descendants and primitive vectors") {
    // at (h,c) = (1/2, 1/2) the factors for (2,1) and (3,1) both vanish: the
    // level-3 kernel holds one descendant of the level-2 null vector plus one
    // new primitive singular vector
    VermaContext probe = VermaContext::symbolic();
    std::vector<Rational> pt = {Rational(1, 2), Rational(1, 2)};
    CHECK(kac_phi(2, 1, KacVariant::Corrected, probe).eval(pt) == Rational(0));
    CHECK(kac_phi(3, 1, KacVariant::Corrected, probe).eval(pt) == Rational(0));
    auto sv = singular_vectors(Rational(1, 2), Rational(1, 2), 3);
    CHECK(sv.kernel.size() == 2);
    CHECK(sv.primitive.size() == 1);
}
