#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netrel/errors.hpp"
#include "netrel/experiment.hpp"
#include "netrel/io.hpp"
#include "netrel/mathfn.hpp"

namespace netrel {

/// Row order used by the reference coefficient tables.
inline constexpr std::array<Measure, 5> kReportMeasureOrder = {
    Measure::betweenness, Measure::closeness, Measure::degree, Measure::eigenvector,
    Measure::pagerank};

inline constexpr std::array<ConfigTag, 4> kNamedConfigOrder = {
    ConfigTag::crg_strong, ConfigTag::crg_weak, ConfigTag::lfr_strong, ConfigTag::lfr_weak};

struct ColumnInfo {
    std::string group;  // "(all)" for the intercept
    std::string term;   // "intercept", "sqrt_alpha", "sqrt_alpha_lambda", ...

    std::string name() const { return group + "/" + term; }
    bool operator==(const ColumnInfo&) const = default;
};

/// Dense column-major design matrix with named columns.
struct DesignMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // column-major: data[c * rows + r]
    std::vector<ColumnInfo> columns;

    double& at(std::size_t r, std::size_t c) { return data[c * rows + r]; }
    double at(std::size_t r, std::size_t c) const { return data[c * rows + r]; }
};

struct DesignBuild {
    DesignMatrix X;
    std::vector<double> y;
    std::size_t excluded_error_rows = 0;  // in-scope records dropped for error status
};

namespace stats_detail {

inline std::size_t measure_report_index(Measure m) {
    for (std::size_t i = 0; i < kReportMeasureOrder.size(); ++i) {
        if (kReportMeasureOrder[i] == m) return i;
    }
    throw std::invalid_argument("unknown measure");
}

inline std::size_t named_config_index(ConfigTag tag) {
    for (std::size_t i = 0; i < kNamedConfigOrder.size(); ++i) {
        if (kNamedConfigOrder[i] == tag) return i;
    }
    throw std::invalid_argument("config is not one of the four named configurations");
}

}  // namespace stats_detail

/// Design for tau = b0 + b1[m,c] sqrt(a) + b2[m,c] sqrt(a) l: a shared
/// intercept plus one (sqrt_alpha, sqrt_alpha_lambda) column pair per
/// (measure, named config) group -> 41 columns. Records from other
/// configurations are ignored; error records are excluded and counted.
inline DesignBuild build_design_eq2(std::span<const TrialRecord> records) {
    std::vector<const TrialRecord*> rows;
    std::size_t excluded = 0;
    for (const auto& r : records) {
        if (r.config.tag == ConfigTag::lfr_varying) continue;
        if (!r.ok) {
            ++excluded;
            continue;
        }
        rows.push_back(&r);
    }
    if (rows.empty()) throw std::invalid_argument("eq2 design: no usable records");

    std::array<bool, 20> seen{};
    for (const auto* r : rows) {
        seen[stats_detail::measure_report_index(r->measure) * 4 +
             stats_detail::named_config_index(r->config.tag)] = true;
    }
    for (std::size_t g = 0; g < seen.size(); ++g) {
        if (!seen[g]) {
            throw std::invalid_argument(
                "eq2 design: missing records for group " +
                std::string(to_string(kReportMeasureOrder[g / 4])) + ":" +
                config_name({kNamedConfigOrder[g % 4], {}}));
        }
    }

    DesignBuild build;
    build.excluded_error_rows = excluded;
    auto& X = build.X;
    X.rows = rows.size();
    X.cols = 1 + 20 * 2;
    X.data.assign(X.rows * X.cols, 0.0);
    X.columns.push_back({"(all)", "intercept"});
    for (Measure m : kReportMeasureOrder) {
        for (ConfigTag c : kNamedConfigOrder) {
            const std::string group = config_name({c, {}}) + ":" + to_string(m);
            X.columns.push_back({group, "sqrt_alpha"});
            X.columns.push_back({group, "sqrt_alpha_lambda"});
        }
    }

    build.y.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = *rows[i];
        const std::size_t g = stats_detail::measure_report_index(r.measure) * 4 +
                              stats_detail::named_config_index(r.config.tag);
        const double sqrt_alpha = std::sqrt(r.alpha);
        X.at(i, 0) = 1.0;
        X.at(i, 1 + 2 * g) = sqrt_alpha;
        X.at(i, 2 + 2 * g) = sqrt_alpha * r.lambda;
        build.y[i] = r.tau;
    }
    return build;
}

/// Design for tau = b0 + b1[m] sqrt(a) + b2[m] sqrt(a) mu + b3[m] sqrt(a) l
/// + b4[m] sqrt(a) mu l over the lfr_varying records, grouped per measure
/// (the mu grid is pooled) -> 21 columns.
inline DesignBuild build_design_eq3(std::span<const TrialRecord> records) {
    std::vector<const TrialRecord*> rows;
    std::size_t excluded = 0;
    for (const auto& r : records) {
        if (r.config.tag != ConfigTag::lfr_varying) continue;
        if (!r.ok) {
            ++excluded;
            continue;
        }
        rows.push_back(&r);
    }
    if (rows.empty()) throw std::invalid_argument("eq3 design: no usable records");

    std::array<bool, 5> seen{};
    for (const auto* r : rows) seen[stats_detail::measure_report_index(r->measure)] = true;
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            throw std::invalid_argument(std::string("eq3 design: missing records for measure ") +
                                        to_string(kReportMeasureOrder[i]));
        }
    }

    DesignBuild build;
    build.excluded_error_rows = excluded;
    auto& X = build.X;
    X.rows = rows.size();
    X.cols = 1 + 5 * 4;
    X.data.assign(X.rows * X.cols, 0.0);
    X.columns.push_back({"(all)", "intercept"});
    for (Measure m : kReportMeasureOrder) {
        const std::string group = to_string(m);
        X.columns.push_back({group, "sqrt_alpha"});
        X.columns.push_back({group, "sqrt_alpha_mu"});
        X.columns.push_back({group, "sqrt_alpha_lambda"});
        X.columns.push_back({group, "sqrt_alpha_mu_lambda"});
    }

    build.y.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = *rows[i];
        const std::size_t g = stats_detail::measure_report_index(r.measure);
        const double sqrt_alpha = std::sqrt(r.alpha);
        const double mu = r.config.mu;
        X.at(i, 0) = 1.0;
        X.at(i, 1 + 4 * g) = sqrt_alpha;
        X.at(i, 2 + 4 * g) = sqrt_alpha * mu;
        X.at(i, 3 + 4 * g) = sqrt_alpha * r.lambda;
        X.at(i, 4 + 4 * g) = sqrt_alpha * mu * r.lambda;
        build.y[i] = r.tau;
    }
    return build;
}

struct Coefficient {
    ColumnInfo column;
    double estimate = 0.0;
    double std_error = 0.0;
    double t = 0.0;
    double p = 1.0;
};

struct RegressionFit {
    std::vector<Coefficient> coefficients;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double residual_variance = 0.0;  // RSS / (rows - cols)
    std::size_t residual_df = 0;
    std::size_t rows = 0;
    std::size_t excluded_error_rows = 0;

    const Coefficient& find(std::string_view group, std::string_view term) const {
        for (const auto& c : coefficients) {
            if (c.column.group == group && c.column.term == term) return c;
        }
        throw std::invalid_argument("no coefficient " + std::string(group) + "/" +
                                    std::string(term));
    }
};

/// Ordinary least squares via Householder QR. Standard errors come from the
/// diagonal of sigma^2 (R^T R)^-1; p values are two-sided Student-t.
inline RegressionFit ols(const DesignMatrix& X, std::span<const double> y) {
    const std::size_t m = X.rows;
    const std::size_t p = X.cols;
    if (y.size() != m) throw std::invalid_argument("ols: response length mismatch");
    if (m <= p) throw std::invalid_argument("ols: need more rows than columns");

    std::vector<double> a = X.data;  // working copy, column-major
    std::vector<double> qty(y.begin(), y.end());
    const auto col = [&](std::size_t c) { return a.data() + c * m; };

    double scale = 0.0;
    for (std::size_t c = 0; c < p; ++c) {
        double norm = 0.0;
        for (std::size_t r = 0; r < m; ++r) norm += col(c)[r] * col(c)[r];
        scale = std::max(scale, std::sqrt(norm));
    }
    const double pivot_tolerance = 1e-10 * scale;

    std::vector<std::string> deficient;
    std::vector<double> v(m);
    for (std::size_t j = 0; j < p; ++j) {
        double norm_sq = 0.0;
        for (std::size_t r = j; r < m; ++r) norm_sq += col(j)[r] * col(j)[r];
        const double norm = std::sqrt(norm_sq);
        if (norm <= pivot_tolerance) {
            deficient.push_back(X.columns[j].name());
            col(j)[j] = 0.0;
            continue;
        }
        const double alpha = col(j)[j] >= 0.0 ? -norm : norm;
        double vtv = 0.0;
        v[j] = col(j)[j] - alpha;
        vtv += v[j] * v[j];
        for (std::size_t r = j + 1; r < m; ++r) {
            v[r] = col(j)[r];
            vtv += v[r] * v[r];
        }
        if (vtv > 0.0) {
            const double two_over_vtv = 2.0 / vtv;
            for (std::size_t c = j + 1; c < p; ++c) {
                double dot = 0.0;
                for (std::size_t r = j; r < m; ++r) dot += v[r] * col(c)[r];
                const double w = dot * two_over_vtv;
                for (std::size_t r = j; r < m; ++r) col(c)[r] -= w * v[r];
            }
            double dot = 0.0;
            for (std::size_t r = j; r < m; ++r) dot += v[r] * qty[r];
            const double w = dot * two_over_vtv;
            for (std::size_t r = j; r < m; ++r) qty[r] -= w * v[r];
        }
        col(j)[j] = alpha;  // entries below the diagonal are implicitly zero now
    }
    if (!deficient.empty()) {
        std::string msg = "design matrix is rank deficient; dependent columns:";
        for (const auto& name : deficient) msg += " " + name;
        throw RankDeficiencyError(msg, deficient);
    }

    // back substitution: R beta = (Q^T y)[0..p)
    std::vector<double> beta(p, 0.0);
    for (std::size_t j = p; j-- > 0;) {
        double acc = qty[j];
        for (std::size_t c = j + 1; c < p; ++c) acc -= col(c)[j] * beta[c];
        beta[j] = acc / col(j)[j];
    }

    double rss = 0.0;
    for (std::size_t r = p; r < m; ++r) rss += qty[r] * qty[r];

    // R^{-1} by back substitution, then diag((R^T R)^{-1}) = row norms of R^{-1}
    std::vector<double> rinv(p * p, 0.0);  // column-major p x p
    for (std::size_t c = 0; c < p; ++c) {
        for (std::size_t j = c + 1; j-- > 0;) {
            double acc = (j == c) ? 1.0 : 0.0;
            for (std::size_t t = j + 1; t <= c; ++t) acc -= col(t)[j] * rinv[c * p + t];
            rinv[c * p + j] = acc / col(j)[j];
        }
    }

    const std::size_t df = m - p;
    const double sigma2 = rss / static_cast<double>(df);

    double mean_y = 0.0;
    for (double yi : y) mean_y += yi;
    mean_y /= static_cast<double>(m);
    double tss = 0.0;
    for (double yi : y) tss += (yi - mean_y) * (yi - mean_y);
    const double r2 = tss > 0.0 ? 1.0 - rss / tss : 1.0;

    RegressionFit fit;
    fit.rows = m;
    fit.residual_df = df;
    fit.residual_variance = sigma2;
    fit.r_squared = r2;
    fit.adj_r_squared =
        1.0 - (1.0 - r2) * static_cast<double>(m - 1) / static_cast<double>(df);
    fit.coefficients.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
        auto& c = fit.coefficients[i];
        c.column = X.columns[i];
        c.estimate = beta[i];
        double row_norm_sq = 0.0;
        for (std::size_t k = i; k < p; ++k) {
            const double e = rinv[k * p + i];
            row_norm_sq += e * e;
        }
        c.std_error = std::sqrt(sigma2 * row_norm_sq);
        c.t = c.estimate / c.std_error;
        c.p = student_t_two_sided_p(c.t, static_cast<double>(df));
    }
    return fit;
}

inline std::string significance_stars(double p) { return p < 0.001 ? "***" : ""; }

enum class TableLayout { table2, table3 };

namespace stats_detail {

inline void check_layout(const RegressionFit& fit, TableLayout layout) {
    const std::size_t expect = layout == TableLayout::table2 ? 41 : 21;
    if (fit.coefficients.size() != expect) {
        throw std::invalid_argument("fit does not match the requested table layout");
    }
    const bool grouped_by_config = fit.coefficients.back().column.group.find(':') !=
                                   std::string::npos;
    if ((layout == TableLayout::table2) != grouped_by_config) {
        throw std::invalid_argument("fit does not match the requested table layout");
    }
}

inline std::string coefficient_cell(const Coefficient& c) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f%s", c.estimate, significance_stars(c.p).c_str());
    return buf;
}

inline std::string stderr_cell(const Coefficient& c) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%.1E)", c.std_error);
    return buf;
}

}  // namespace stats_detail

/// Aligned-text rendering of a fitted model in the reference table shape.
inline std::string report_table_text(const RegressionFit& fit, TableLayout layout) {
    stats_detail::check_layout(fit, layout);
    std::ostringstream out;
    const auto& intercept = fit.find("(all)", "intercept");
    char head[160];
    std::snprintf(head, sizeof(head), "Intercept: %.3f%s (%.1E)   adjusted R^2: %.3f   n = %zu\n",
                  intercept.estimate, significance_stars(intercept.p).c_str(),
                  intercept.std_error, fit.adj_r_squared, fit.rows);
    out << head;
    if (fit.excluded_error_rows > 0) {
        out << "excluded error records: " << fit.excluded_error_rows << "\n";
    }

    const auto cell = [&](const std::string& s, int width) {
        out << s;
        for (int i = static_cast<int>(s.size()); i < width; ++i) out << ' ';
    };

    if (layout == TableLayout::table2) {
        cell("", 14);
        for (ConfigTag tag : kNamedConfigOrder) {
            cell(config_name({tag, {}}), 24);
        }
        out << '\n';
        cell("", 14);
        for (int i = 0; i < 4; ++i) {
            cell("sqrt_a", 12);
            cell("sqrt_a*l", 12);
        }
        out << '\n';
        for (Measure m : kReportMeasureOrder) {
            cell(to_string(m), 14);
            for (ConfigTag tag : kNamedConfigOrder) {
                const std::string group = config_name({tag, {}}) + ":" + to_string(m);
                cell(stats_detail::coefficient_cell(fit.find(group, "sqrt_alpha")), 12);
                cell(stats_detail::coefficient_cell(fit.find(group, "sqrt_alpha_lambda")), 12);
            }
            out << '\n';
            cell("", 14);
            for (ConfigTag tag : kNamedConfigOrder) {
                const std::string group = config_name({tag, {}}) + ":" + to_string(m);
                cell(stats_detail::stderr_cell(fit.find(group, "sqrt_alpha")), 12);
                cell(stats_detail::stderr_cell(fit.find(group, "sqrt_alpha_lambda")), 12);
            }
            out << '\n';
        }
    } else {
        static constexpr const char* kTerms[4] = {"sqrt_alpha", "sqrt_alpha_mu",
                                                  "sqrt_alpha_lambda", "sqrt_alpha_mu_lambda"};
        static constexpr const char* kHeads[4] = {"sqrt_a", "sqrt_a*mu", "sqrt_a*l",
                                                  "sqrt_a*mu*l"};
        cell("", 14);
        for (const char* h : kHeads) cell(h, 14);
        out << '\n';
        for (Measure m : kReportMeasureOrder) {
            cell(to_string(m), 14);
            for (const char* term : kTerms) {
                cell(stats_detail::coefficient_cell(fit.find(to_string(m), term)), 14);
            }
            out << '\n';
            cell("", 14);
            for (const char* term : kTerms) {
                cell(stats_detail::stderr_cell(fit.find(to_string(m), term)), 14);
            }
            out << '\n';
        }
    }
    return out.str();
}

inline constexpr const char* kCoefficientsCsvHeader = "group,term,estimate,std_error,t,p,stars";

/// Coefficient CSV plus model-level summary rows (group "model").
inline void write_coefficients_csv(const std::filesystem::path& path, const RegressionFit& fit) {
    auto out = io_detail::open_output(path);
    out << kCoefficientsCsvHeader << '\n';
    for (const auto& c : fit.coefficients) {
        out << c.column.group << ',' << c.column.term << ',' << format_double(c.estimate) << ','
            << format_double(c.std_error) << ',' << format_double(c.t) << ','
            << format_double(c.p) << ',' << significance_stars(c.p) << '\n';
    }
    out << "model,r_squared," << format_double(fit.r_squared) << ",,,,\n";
    out << "model,adj_r_squared," << format_double(fit.adj_r_squared) << ",,,,\n";
    out << "model,residual_variance," << format_double(fit.residual_variance) << ",,,,\n";
    out << "model,residual_df," << fit.residual_df << ",,,,\n";
    out << "model,rows," << fit.rows << ",,,,\n";
    out << "model,excluded_error_rows," << fit.excluded_error_rows << ",,,,\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace netrel
