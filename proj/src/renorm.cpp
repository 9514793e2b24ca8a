#include "colperc/renorm.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace colperc {

int syndetic_gap_bound(int n, double rho) {
    if (n < 1) throw std::invalid_argument("syndetic_gap_bound: n >= 1 required");
    if (rho <= 0.0 || rho > 1.0)
        throw std::invalid_argument("syndetic_gap_bound: rho in (0,1] required");
    return static_cast<int>(std::ceil((2.0 / rho) * std::log(2.0 * n)));
}

bool column_good(const ColumnSet& columns, int i, int n, double rho) {
    const int k = syndetic_gap_bound(n, rho);
    const Interval window{2 * n * (i - 1), 2 * n * (i + 1)};
    return is_syndetic(columns, k, window);
}

std::vector<std::uint8_t> goodness_field(const ColumnSet& columns, Interval indices, int n,
                                         double rho) {
    std::vector<std::uint8_t> xi(static_cast<std::size_t>(indices.length()));
    for (int i = indices.lo; i <= indices.hi; ++i)
        xi[static_cast<std::size_t>(i - indices.lo)] = column_good(columns, i, n, rho) ? 1 : 0;
    return xi;
}

BlockWindow BlockWindow::make(int n, Rect vrect) {
    if (n < 2) throw std::invalid_argument("BlockWindow: n >= 2 required");
    BlockWindow window;
    window.n = n;
    window.vrect = vrect;
    for (int v2 = vrect.lo.x2; v2 <= vrect.hi.x2; ++v2)
        for (int v1 = vrect.lo.x1; v1 <= vrect.hi.x1; ++v1)
            if (((v1 + v2) % 2 + 2) % 2 == 0) window.sites.push_back({v1, v2});
    if (window.sites.empty()) throw std::invalid_argument("BlockWindow: no even-parity sites");
    return window;
}

int BlockWindow::site_index(Site v) const {
    for (std::size_t i = 0; i < sites.size(); ++i)
        if (sites[i] == v) return static_cast<int>(i);
    return -1;
}

Rect block_field_region(const BlockWindow& window) {
    const int n = window.n;
    return Rect{{2 * n * window.vrect.lo.x1 - (2 * n - 1), 2 * n * window.vrect.lo.x2 - (2 * n - 1)},
                {2 * n * window.vrect.hi.x1 + (2 * n - 1), 2 * n * window.vrect.hi.x2 + (2 * n - 1)}};
}

Interval block_field_column_span(const BlockWindow& window) {
    const int n = window.n;
    return {2 * n * (window.vrect.lo.x1 - 1), 2 * n * (window.vrect.hi.x1 + 1)};
}

bool BlockField::xi_at(int column) const {
    if (!xi_columns.contains(column))
        throw std::out_of_range("BlockField::xi_at: column outside window");
    return xi[static_cast<std::size_t>(column - xi_columns.lo)] != 0;
}

namespace {

void validate_eta(double eta) {
    if (!(eta > 0.0) || eta > 0.5)
        throw std::invalid_argument("eta must lie in (0, 1/2]");
}

std::uint64_t site_key(Site v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.x1)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.x2));
}

}  // namespace

BlockField block_field(const ColumnSet& columns, const BlockWindow& window,
                       const SamplerParams& params, double eta, RandomStream stream) {
    validate_eta(eta);
    const Interval span = block_field_column_span(window);
    if (!columns.range().contains(span))
        throw std::invalid_argument("block_field: column set does not cover the window span");

    // One shared configuration for all blocks: neighbouring boxes overlap, so
    // the sampled X field carries the true 1-dependence.
    const Rect region = block_field_region(window);
    const BondConfig config =
        sample_config(region, columns, params, stream.derive(stream_tag::bonds));
    const RandomStream sprinkle = stream.derive(stream_tag::sprinkle);

    BlockField field;
    field.window = window;
    const int n = window.n;
    for (const Site& v : window.sites) {
        const Site center{2 * n * v.x1, 2 * n * v.x2};
        const bool x = annulus_circuit(config, center, n);
        const bool y = sprinkle.bernoulli_at(1.0 - eta, site_key(v), 0);
        field.x.push_back(x ? 1 : 0);
        field.y.push_back(y ? 1 : 0);
        field.w.push_back(x && y ? 1 : 0);
    }
    field.xi_columns = window.vrect.xspan();
    field.xi = goodness_field(columns, field.xi_columns, n, params.rho);
    return field;
}

std::string block_field_to_text(const BlockField& field) {
    std::ostringstream out;
    out << "blockfield v1\n";
    out << "n " << field.window.n << "\n";
    out << "vrect " << field.window.vrect.lo.x1 << " " << field.window.vrect.lo.x2 << " "
        << field.window.vrect.hi.x1 << " " << field.window.vrect.hi.x2 << "\n";
    for (std::size_t i = 0; i < field.window.sites.size(); ++i) {
        const Site& v = field.window.sites[i];
        out << "site " << v.x1 << " " << v.x2 << " " << int(field.x[i]) << " "
            << int(field.y[i]) << " " << int(field.w[i]) << "\n";
    }
    for (int c = field.xi_columns.lo; c <= field.xi_columns.hi; ++c)
        out << "xi " << c << " " << (field.xi_at(c) ? 1 : 0) << "\n";
    return out.str();
}

BlockField block_field_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "blockfield v1")
        throw std::invalid_argument("block_field_from_text: bad header");

    std::string word;
    int n = 0;
    in >> word >> n;
    if (word != "n") throw std::invalid_argument("block_field_from_text: expected n");
    int lo1, lo2, hi1, hi2;
    in >> word >> lo1 >> lo2 >> hi1 >> hi2;
    if (word != "vrect") throw std::invalid_argument("block_field_from_text: expected vrect");

    BlockField field;
    field.window = BlockWindow::make(n, Rect{{lo1, lo2}, {hi1, hi2}});
    field.xi_columns = field.window.vrect.xspan();
    field.xi.assign(static_cast<std::size_t>(field.xi_columns.length()), 0);
    field.x.assign(field.window.sites.size(), 0);
    field.y.assign(field.window.sites.size(), 0);
    field.w.assign(field.window.sites.size(), 0);

    while (in >> word) {
        if (word == "site") {
            int v1, v2, x, y, w;
            in >> v1 >> v2 >> x >> y >> w;
            const int idx = field.window.site_index({v1, v2});
            if (idx < 0) throw std::invalid_argument("block_field_from_text: unknown site");
            field.x[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(x);
            field.y[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(y);
            field.w[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(w);
        } else if (word == "xi") {
            int c, g;
            in >> c >> g;
            if (!field.xi_columns.contains(c))
                throw std::invalid_argument("block_field_from_text: xi column outside window");
            field.xi[static_cast<std::size_t>(c - field.xi_columns.lo)] =
                static_cast<std::uint8_t>(g);
        } else {
            throw std::invalid_argument("block_field_from_text: unknown record " + word);
        }
    }
    return field;
}

OneDependenceReport one_dependence_check(std::span<const BlockField> fields) {
    if (fields.size() < 10000)
        throw std::invalid_argument("one_dependence_check: at least 10^4 samples required");
    const BlockWindow& window = fields.front().window;
    for (const BlockField& f : fields)
        if (f.window.sites != window.sites || f.window.n != window.n)
            throw std::invalid_argument("one_dependence_check: inconsistent windows");

    const std::size_t m = window.sites.size();
    const double nf = static_cast<double>(fields.size());
    std::vector<double> mean(m, 0.0);
    for (const BlockField& f : fields)
        for (std::size_t i = 0; i < m; ++i) mean[i] += f.x[i];
    for (auto& v : mean) v /= nf;

    OneDependenceReport report;
    report.n_samples = fields.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            double exy = 0.0;
            for (const BlockField& f : fields) exy += f.x[i] && f.x[j] ? 1.0 : 0.0;
            exy /= nf;
            const double var_i = mean[i] * (1.0 - mean[i]);
            const double var_j = mean[j] * (1.0 - mean[j]);
            if (var_i <= 0.0 || var_j <= 0.0) continue;  // constant field
            const double corr = (exy - mean[i] * mean[j]) / std::sqrt(var_i * var_j);
            const int dist = l1_norm(window.sites[i] - window.sites[j]);
            if (dist > 2) {
                ++report.far_pairs;
                if (std::abs(corr) > report.max_far_abs_corr)
                    report.max_far_abs_corr = std::abs(corr);
                if (std::abs(corr) >= 0.02)
                    report.far_outliers.push_back({window.sites[i], window.sites[j], dist, corr});
            } else {
                report.near_pairs.push_back({window.sites[i], window.sites[j], dist, corr});
            }
        }
    }
    return report;
}

ConditionalBoundReport conditional_bound_check(const ColumnSet& columns,
                                               const SamplerParams& params, int n, double eta,
                                               std::uint64_t n_samples, RandomStream stream,
                                               int workers) {
    validate_eta(eta);
    if (n < 2) throw std::invalid_argument("conditional_bound_check: n >= 2 required");
    if (n_samples < 1)
        throw std::invalid_argument("conditional_bound_check: n_samples >= 1 required");

    // 0 and its four oriented-lattice neighbours.
    const Site origin{0, 0};
    const std::array<Site, 4> neighbours{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    const int nn = n;
    const Rect region{{-(4 * nn - 1), -(4 * nn - 1)}, {4 * nn - 1, 4 * nn - 1}};
    if (!columns.range().contains(region.xspan()))
        throw std::invalid_argument("conditional_bound_check: column set too small");

    struct Tally {
        std::array<std::uint64_t, 16> count{};
        std::array<std::uint64_t, 16> hit{};
        std::uint64_t marginal_hits = 0;
    };
    const int nworkers = workers < 1 ? 1 : workers;
    std::vector<Tally> tallies(static_cast<std::size_t>(nworkers));

    count_successes(n_samples, nworkers, [&](std::uint64_t i) {
        const RandomStream sample_stream = stream.derive(i);
        const BondConfig config =
            sample_config(region, columns, params, sample_stream.derive(stream_tag::bonds));
        const RandomStream sprinkle = sample_stream.derive(stream_tag::sprinkle);

        auto w_at = [&](Site v) {
            const Site center{2 * nn * v.x1, 2 * nn * v.x2};
            if (!annulus_circuit(config, center, nn)) return false;
            return sprinkle.bernoulli_at(1.0 - eta, site_key(v), 0);
        };

        unsigned pattern = 0;
        for (std::size_t k = 0; k < neighbours.size(); ++k)
            if (w_at(neighbours[k])) pattern |= 1u << k;
        Tally& tally = tallies[static_cast<std::size_t>(i % nworkers)];
        ++tally.count[pattern];
        if (w_at(origin)) {
            ++tally.hit[pattern];
            ++tally.marginal_hits;
        }
        return false;
    });

    Tally total;
    for (const Tally& t : tallies) {
        for (int k = 0; k < 16; ++k) {
            total.count[k] += t.count[k];
            total.hit[k] += t.hit[k];
        }
        total.marginal_hits += t.marginal_hits;
    }

    ConditionalBoundReport report;
    report.n_samples = n_samples;
    report.eta = eta;
    report.p_marginal =
        static_cast<double>(total.marginal_hits) / static_cast<double>(n_samples);
    const double eta4 = eta * eta * eta * eta;
    const double sigma_marginal = binomial_stderr(total.marginal_hits, n_samples);

    for (unsigned pattern = 0; pattern < 16; ++pattern) {
        ConditionalBoundRow row;
        for (std::size_t k = 0; k < 4; ++k) row.pattern[k] = (pattern >> k) & 1u;
        row.count = total.count[pattern];
        row.successes = total.hit[pattern];
        row.covered = row.count >= 100;
        row.bound = eta4 * report.p_marginal;
        if (row.count > 0) {
            row.p_cond = static_cast<double>(row.successes) / static_cast<double>(row.count);
            const double sigma_cond = binomial_stderr(row.successes, row.count);
            row.sigma = std::sqrt(sigma_cond * sigma_cond +
                                  eta4 * eta4 * sigma_marginal * sigma_marginal);
            row.pass = !row.covered || row.p_cond >= row.bound - 3.0 * row.sigma;
        }
        if (!row.covered) report.partial = true;
        if (row.covered && !row.pass) report.all_covered_pass = false;
        report.rows.push_back(row);
    }
    return report;
}

RenormalisedParameters renormalised_parameters(double pc_oriented,
                                               double circuit_probability_floor) {
    if (!(pc_oriented > 0.0) || !(pc_oriented < 1.0))
        throw std::invalid_argument("renormalised_parameters: pc_oriented in (0,1) required");
    if (!(circuit_probability_floor > 0.0) || !(circuit_probability_floor < 1.0))
        throw std::invalid_argument(
            "renormalised_parameters: circuit floor in (0,1) required");
    RenormalisedParameters out;
    out.eta = (1.0 - pc_oriented) / 3.0;
    out.p_good = 1.0 - 2.0 * out.eta;
    out.p_bad = std::pow(out.eta, 4) * (1.0 - out.eta) * circuit_probability_floor;
    return out;
}

}  // namespace colperc
