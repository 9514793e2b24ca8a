#include <cmath>

#include "colperc/renorm.hpp"
#include "doctest.h"

using namespace colperc;

TEST_CASE("syndetic gap bound uses the natural logarithm") {
    CHECK(syndetic_gap_bound(4, 1.0) == 5);  // ceil(2 ln 8) = ceil(4.159)
    CHECK(syndetic_gap_bound(16, 0.5) == static_cast<int>(std::ceil(4.0 * std::log(32.0))));
    CHECK_THROWS_AS(syndetic_gap_bound(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(syndetic_gap_bound(0, 0.5), std::invalid_argument);
}

TEST_CASE("column goodness endpoints") {
    const int n = 4;
    const Interval span{-2 * n * 3, 2 * n * 3};
    CHECK(column_good(ColumnSet::all(span), 0, n, 0.5));
    CHECK(column_good(ColumnSet::all(span), 1, n, 0.25));
    CHECK_FALSE(column_good(ColumnSet::none(span), 0, n, 0.5));

    // rho=1, n=4: k=5; multiples of 5 meet every window of diameter 5
    std::vector<int> multiples;
    for (int i = span.lo; i <= span.hi; ++i)
        if (i % 5 == 0) multiples.push_back(i);
    CHECK(column_good(ColumnSet::of(span, multiples), 0, n, 1.0));

    CHECK_THROWS_AS(column_good(ColumnSet::all({0, 4}), 0, n, 0.5), std::out_of_range);
}

TEST_CASE("goodness field vectorises column_good and is monotone in the set") {
    const int n = 4;
    const Interval indices{-2, 2};
    const Interval span{2 * n * (indices.lo - 1), 2 * n * (indices.hi + 1)};
    RandomStream root(44);
    for (int i = 0; i < 50; ++i) {
        const ColumnSet columns = sample_columns(0.4, span, root.derive(i));
        const auto xi = goodness_field(columns, indices, n, 0.4);
        for (int c = indices.lo; c <= indices.hi; ++c)
            CHECK((xi[static_cast<std::size_t>(c - indices.lo)] != 0) ==
                  column_good(columns, c, n, 0.4));

        // removing columns never turns a bad column good
        std::vector<std::uint8_t> fewer = columns.raw();
        for (std::size_t k = 0; k < fewer.size(); k += 7) fewer[k] = 0;
        const auto xi_fewer = goodness_field(ColumnSet(span, fewer), indices, n, 0.4);
        for (std::size_t k = 0; k < xi.size(); ++k)
            if (xi_fewer[k]) CHECK(xi[k]);
    }
}

TEST_CASE("bad-column frequency obeys the 1/n bound at the prescribed k") {
    const int n = 64;
    const double rho = 0.5;
    const Interval span{-2 * n, 2 * n};
    RandomStream root(321);
    const int draws = 10000;
    int bad = 0;
    for (int i = 0; i < draws; ++i) {
        const ColumnSet columns = sample_columns(rho, span, root.derive(i));
        if (!column_good(columns, 0, n, rho)) ++bad;
    }
    const double freq = static_cast<double>(bad) / draws;
    const double sigma = std::sqrt(freq * (1 - freq) / draws);
    CHECK(freq <= 1.0 / n + 3 * sigma);
}

TEST_CASE("block window keeps the parity constraint") {
    const BlockWindow window = BlockWindow::make(3, Rect{{-1, -1}, {1, 1}});
    CHECK(window.sites.size() == 5);  // origin and its four oriented neighbours
    for (const Site& v : window.sites) CHECK((v.x1 + v.x2) % 2 == 0);
    CHECK(window.site_index({0, 0}) >= 0);
    CHECK(window.site_index({1, 0}) == -1);
}

TEST_CASE("block field endpoints and the W = XY invariant") {
    const BlockWindow window = BlockWindow::make(2, Rect{{-1, -1}, {1, 1}});
    const Interval span = block_field_column_span(window);
    const ColumnSet columns = ColumnSet::all(span);
    RandomStream root(55);

    const BlockField ones = block_field(columns, window, {1.0, 1.0, 0.5}, 0.5, root.derive(0));
    for (std::size_t i = 0; i < window.sites.size(); ++i) {
        CHECK(ones.x[i] == 1);  // full annulus: circuit always present
        CHECK(ones.w[i] == (ones.y[i] ? 1 : 0));
    }

    const BlockField zeros =
        block_field(columns, window, {0.0, 0.0, 0.5}, 0.5, root.derive(1));
    for (std::size_t i = 0; i < window.sites.size(); ++i) {
        CHECK(zeros.x[i] == 0);
        CHECK(zeros.w[i] == 0);
    }

    // W <= X pointwise and W = X wherever Y = 1, on random fields
    for (int trial = 0; trial < 30; ++trial) {
        const BlockField field =
            block_field(columns, window, {0.55, 0.5, 0.5}, 0.4, root.derive(2, trial));
        for (std::size_t i = 0; i < window.sites.size(); ++i) {
            CHECK(field.w[i] <= field.x[i]);
            if (field.y[i]) CHECK(field.w[i] == field.x[i]);
        }
    }

    CHECK_THROWS_AS(block_field(columns, window, {0.5, 0.5, 0.5}, 0.0, root.derive(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(block_field(columns, window, {0.5, 0.5, 0.5}, 0.6, root.derive(4)),
                    std::invalid_argument);
}

TEST_CASE("sprinkling noise has the right mean at eta = 1/2") {
    const BlockWindow window = BlockWindow::make(2, Rect{{0, 0}, {5, 5}});
    const Interval span = block_field_column_span(window);
    const ColumnSet columns = ColumnSet::all(span);
    RandomStream root(66);
    std::uint64_t ones = 0, total = 0;
    for (int i = 0; i < 800; ++i) {
        const BlockField field =
            block_field(columns, window, {1.0, 1.0, 0.5}, 0.5, root.derive(i));
        for (auto y : field.y) {
            ones += y;
            ++total;
        }
    }
    const double mean = static_cast<double>(ones) / static_cast<double>(total);
    CHECK(std::abs(mean - 0.5) < 3.0 / (2.0 * std::sqrt(static_cast<double>(total))));
}

TEST_CASE("block field text serialisation round-trips") {
    const BlockWindow window = BlockWindow::make(2, Rect{{-1, 0}, {2, 2}});
    const Interval span = block_field_column_span(window);
    RandomStream root(67);
    const BlockField field =
        block_field(ColumnSet::all(span), window, {0.6, 0.45, 0.5}, 0.3, root.derive(0));
    const BlockField back = block_field_from_text(block_field_to_text(field));
    CHECK(back.window.sites == field.window.sites);
    CHECK(back.x == field.x);
    CHECK(back.y == field.y);
    CHECK(back.w == field.w);
    CHECK(back.xi == field.xi);
}

TEST_CASE("shared-edge construction changes joint law, not marginals") {
    // Neighbouring blocks overlap; marginal frequencies must agree with an
    // independent-boxes construction within 3 sigma.
    const int n = 2;
    const BlockWindow window = BlockWindow::make(n, Rect{{0, 0}, {1, 1}});
    const Interval span = block_field_column_span(window);
    const ColumnSet columns = ColumnSet::all(span);
    const SamplerParams params{0.55, 0.55, 0.5};
    RandomStream root(68);
    const int samples = 4000;

    std::uint64_t shared_hits = 0, independent_hits = 0;
    for (int i = 0; i < samples; ++i) {
        const BlockField field = block_field(columns, window, params, 0.4, root.derive(0, i));
        shared_hits += field.x[static_cast<std::size_t>(window.site_index({1, 1}))];

        const Site center{2 * n, 2 * n};
        const Rect box = Rect::box(center, 2 * n - 1);
        const BondConfig config = sample_config(
            box, ColumnSet::all(box.xspan()), params, root.derive(1, i));
        independent_hits += annulus_circuit(config, center, n) ? 1 : 0;
    }
    const double a = static_cast<double>(shared_hits) / samples;
    const double b = static_cast<double>(independent_hits) / samples;
    const double sigma = std::sqrt(a * (1 - a) / samples + b * (1 - b) / samples);
    CHECK(std::abs(a - b) < 3 * sigma + 1e-9);
}

TEST_CASE("one-dependence: far pairs decorrelate") {
    // Needs a non-degenerate X field: at p=q=1/2 the circuit probability is
    // numerically zero at desk scales, so run slightly supercritical.
    const int n = 4;
    const BlockWindow window = BlockWindow::make(n, Rect{{0, 0}, {3, 3}});
    const Interval span = block_field_column_span(window);
    const ColumnSet columns = ColumnSet::all(span);
    RandomStream root(69);
    std::vector<BlockField> fields;
    const int samples = 40000;
    fields.reserve(samples);
    for (int i = 0; i < samples; ++i)
        fields.push_back(block_field(columns, window, {0.68, 0.68, 0.5}, 0.4, root.derive(i)));
    const OneDependenceReport report = one_dependence_check(fields);
    CHECK(report.far_pairs > 0);
    CHECK(report.max_far_abs_corr < 0.02);
    CHECK(report.far_outliers.empty());
    CHECK_FALSE(report.near_pairs.empty());  // near correlations reported, not asserted

    fields.resize(100);
    CHECK_THROWS_AS(one_dependence_check(fields), std::invalid_argument);
}

TEST_CASE("conditional bound check: constant fields and the trivial regime") {
    const Interval span{-100, 100};
    const ColumnSet columns = ColumnSet::all(span);
    RandomStream root(70);

    // p=q=1: X == 1, so P(W=1 | anything) = 1-eta >= eta^4 (1-eta)
    const ConditionalBoundReport sure =
        conditional_bound_check(columns, {1.0, 1.0, 0.5}, 3, 0.4, 3000, root.derive(0));
    CHECK(sure.all_covered_pass);
    CHECK(std::abs(sure.p_marginal - 0.6) < 3 * binomial_stderr(
        static_cast<std::uint64_t>(sure.p_marginal * 3000), 3000) + 0.03);

    // p=q=0: W == 0 identically; the bound is 0 >= 0
    const ConditionalBoundReport never =
        conditional_bound_check(columns, {0.0, 0.0, 0.5}, 3, 0.4, 1000, root.derive(1));
    CHECK(never.all_covered_pass);
    CHECK(never.p_marginal == 0.0);
}

TEST_CASE("conditional bound check holds at criticality on a small scale") {
    const Interval span{-100, 100};
    const ColumnSet columns = ColumnSet::all(span);
    const ConditionalBoundReport report = conditional_bound_check(
        columns, {0.5, 0.5, 0.5}, 3, 0.3, 20000, RandomStream(71).derive(0));
    CHECK(report.all_covered_pass);
    std::uint64_t covered = 0;
    for (const auto& row : report.rows) covered += row.covered ? 1 : 0;
    CHECK(covered >= 1);  // the all-zero pattern at least
}

TEST_CASE("renormalised parameter formulas") {
    const RenormalisedParameters rp = renormalised_parameters(0.7, 0.1);
    CHECK(rp.eta == doctest::Approx(0.1));
    CHECK(rp.p_good == doctest::Approx(0.8));
    CHECK(rp.p_bad == doctest::Approx(1e-4 * 0.9 * 0.1));

    // algebraic guarantees: p_good stays supercritical and eta <= 1/3
    for (double pc : {0.3, 0.5, 0.705, 0.9}) {
        const RenormalisedParameters t = renormalised_parameters(pc, 0.2);
        CHECK(t.p_good > pc);
        CHECK(t.eta <= 1.0 / 3.0 + 1e-12);
        CHECK(t.p_bad > 0.0);
    }
    CHECK_THROWS_AS(renormalised_parameters(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(renormalised_parameters(0.7, 1.0), std::invalid_argument);
}

TEST_CASE("goodness is unaffected by removing columns outside the window") {
    // Xi depends only on Lambda inside [2n(i-1), 2n(i+1)]
    const int n = 3;
    const Interval span{-2 * n * 2, 2 * n * 2};
    RandomStream root(72);
    for (int i = 0; i < 40; ++i) {
        const ColumnSet columns = sample_columns(0.5, span, root.derive(i));
        std::vector<std::uint8_t> trimmed = columns.raw();
        trimmed.front() = 0;  // outside [-2n, 2n] for index 0
        trimmed.back() = 0;
        CHECK(column_good(columns, 0, n, 0.5) ==
              column_good(ColumnSet(span, trimmed), 0, n, 0.5));
    }
}
