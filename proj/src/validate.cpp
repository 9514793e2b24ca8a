#include "colperc/validate.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "colperc/estimator.hpp"

namespace colperc {

namespace {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string detail;
};

void print(std::ostream& out, const CheckResult& r) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.cases << " cases";
    if (r.failures) out << ", " << r.failures << " disagreements";
    if (!r.detail.empty()) out << ", " << r.detail;
    out << ")\n";
}

CheckResult check_annulus_oracle(RandomStream stream, std::uint64_t per_combo) {
    CheckResult r;
    r.name = "annulus dual-blocking detector == ray-cut winding oracle";
    r.pass = true;
    const double probs[] = {0.2, 0.5, 0.8};
    for (int n : {2, 3, 4}) {
        const Rect region = Rect::box({0, 0}, 2 * n - 1);
        const ColumnSet columns = ColumnSet::none(region.xspan());
        for (double p : probs) {
            const SamplerParams params{p, p, 0.0};
            for (std::uint64_t i = 0; i < per_combo; ++i) {
                const BondConfig config = sample_config(
                    region, columns, params,
                    stream.derive(static_cast<std::uint64_t>(n), i).derive(
                        static_cast<std::uint64_t>(p * 1000)));
                ++r.cases;
                if (annulus_circuit(config, {0, 0}, n) !=
                    annulus_circuit_oracle(config, {0, 0}, n)) {
                    ++r.failures;
                    r.pass = false;
                }
            }
        }
    }
    return r;
}

CheckResult check_menger_oracle(RandomStream stream, std::uint64_t n_configs) {
    CheckResult r;
    r.name = "two-path flow == single-cut enumeration oracle (5x5)";
    r.pass = true;
    const Rect region = Rect::box({0, 0}, 2);
    const ColumnSet columns = ColumnSet::none(region.xspan());
    const std::vector<Site> boundary = boundary_sites(region);
    const double probs[] = {0.35, 0.5, 0.65};
    for (std::uint64_t i = 0; i < n_configs; ++i) {
        const double p = probs[i % 3];
        const BondConfig config =
            sample_config(region, columns, {p, p, 0.0}, stream.derive(i));
        ++r.cases;
        if (two_vertex_disjoint_paths(config, {0, 0}, boundary) !=
            two_vertex_disjoint_paths_oracle(config, {0, 0}, boundary)) {
            ++r.failures;
            r.pass = false;
        }
    }
    return r;
}

CheckResult check_duality_exhaustive() {
    CheckResult r;
    r.name = "exhaustive rectangle duality: crossing == no dual blocking path";
    r.pass = true;
    const Rect rect{{0, 0}, {2, 2}};
    const std::size_t n_edges = static_cast<std::size_t>(rect.edge_count());  // 12
    for (std::uint64_t mask = 0; mask < (1ull << n_edges); ++mask) {
        std::vector<std::uint8_t> bits(n_edges);
        for (std::size_t b = 0; b < n_edges; ++b) bits[b] = (mask >> b) & 1u;
        const BondConfig config(rect, bits);
        ++r.cases;
        const bool ok_h = rect_crossing(config, rect, Axis::Horizontal) ==
                          !dual_blocking_path(config, rect, Axis::Horizontal);
        const bool ok_v = rect_crossing(config, rect, Axis::Vertical) ==
                          !dual_blocking_path(config, rect, Axis::Vertical);
        if (!ok_h || !ok_v) {
            ++r.failures;
            r.pass = false;
        }
    }
    return r;
}

CheckResult check_russo_finite_difference(RandomStream stream, std::uint64_t n_samples) {
    CheckResult r;
    r.name = "Russo identity: pivotal sum == finite-difference slope (B_2 crossing)";
    const Rect box = Rect::box({0, 0}, 2);
    const ColumnSet columns = ColumnSet::none(box.xspan());
    const EventSpec crossing = RectCrossing{box, Axis::Horizontal};
    const std::vector<Edge> edges = edges_of_region(box);

    const double s = 0.5, h = 0.01;
    // Coupled central difference: the same uniforms drive both parameters.
    std::uint64_t diff_hits = 0;
    double pivotal_sum_acc = 0.0, pivotal_sq_acc = 0.0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const RandomStream sample_stream = stream.derive(i);
        const BondConfig hi =
            sample_config(box, columns, {s + h, s + h, 0.0}, sample_stream);
        const BondConfig lo =
            sample_config(box, columns, {s - h, s - h, 0.0}, sample_stream);
        const bool up = rect_crossing(hi, box, Axis::Horizontal);
        const bool down = rect_crossing(lo, box, Axis::Horizontal);
        if (up && !down) ++diff_hits;

        BondConfig mid = sample_config(box, columns, {s, s, 0.0}, sample_stream);
        std::uint64_t pivotal = 0;
        for (const Edge& e : edges)
            if (is_pivotal_inplace(mid, e, crossing)) ++pivotal;
        pivotal_sum_acc += static_cast<double>(pivotal);
        pivotal_sq_acc += static_cast<double>(pivotal) * static_cast<double>(pivotal);
    }
    const double nf = static_cast<double>(n_samples);
    const double slope = static_cast<double>(diff_hits) / nf / (2.0 * h);
    const double slope_err =
        binomial_stderr(diff_hits, n_samples) / (2.0 * h);
    const double pivotal_mean = pivotal_sum_acc / nf;
    const double pivotal_var = (pivotal_sq_acc / nf - pivotal_mean * pivotal_mean);
    const double pivotal_err = std::sqrt(pivotal_var / nf);
    const double gap = std::abs(slope - pivotal_mean);
    const double sigma = std::sqrt(slope_err * slope_err + pivotal_err * pivotal_err);
    r.cases = n_samples;
    r.pass = gap <= 3.0 * sigma;
    r.detail = "slope=" + std::to_string(slope) + " sum=" + std::to_string(pivotal_mean) +
               " gap/sigma=" + std::to_string(sigma > 0 ? gap / sigma : 0.0);
    return r;
}

}  // namespace

bool run_validation(std::ostream& report, std::uint64_t master_seed, double sample_scale) {
    RandomStream root(master_seed);
    auto scaled = [&](std::uint64_t n) {
        auto v = static_cast<std::uint64_t>(static_cast<double>(n) * sample_scale);
        return v < 16 ? 16 : v;
    };
    bool all = true;
    for (const CheckResult& r :
         {check_annulus_oracle(root.derive(1), scaled(10000)),
          check_menger_oracle(root.derive(2), scaled(1000)), check_duality_exhaustive(),
          check_russo_finite_difference(root.derive(3), scaled(40000))}) {
        print(report, r);
        all = all && r.pass;
    }
    return all;
}

}  // namespace colperc
