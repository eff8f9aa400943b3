// gkf: command-line front end to the valuation, kinematic and simulation
// libraries. Every command writes one report document (JSON by default, CSV
// on request) and exits 0 on success, 1 when a statistical gate fails and 2 on
// invalid input.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gkf/gaussian_volumes.hpp"
#include "gkf/kinematics/operators.hpp"
#include "gkf/simulation/drivers.hpp"

#ifndef GKF_BUILD_ID
#define GKF_BUILD_ID "unknown"
#endif

using json = nlohmann::json;
using namespace gkf;

namespace {

constexpr int kSchemaVersion = 1;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// descriptors

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    return out;
}

int parse_int(const std::string& s, const std::string& what)
{
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos == s.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("bad integer '" + s + "' in " + what);
}

double parse_double(const std::string& s, const std::string& what)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos == s.size() && std::isfinite(v)) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("bad number '" + s + "' in " + what);
}

lk::ModelSet parse_sphere_set(const std::string& desc)
{
    const auto p = split(desc, ':');
    if (p.size() == 2 && p[0] == "sphere") {
        return lk::UnitSphere{parse_int(p[1], desc)};
    }
    if (p.size() == 3 && p[0] == "cap") {
        return lk::UnitCap{parse_int(p[1], desc), parse_double(p[2], desc)};
    }
    if (p.size() == 3 && p[0] == "subsphere") {
        return lk::UnitGreatSubsphere{parse_int(p[1], desc), parse_int(p[2], desc)};
    }
    throw ConfigError("unknown sphere-side set '" + desc + "' (sphere:n, cap:n:theta, subsphere:n:m)");
}

gauss::GaussSet parse_gauss_set(const std::string& desc)
{
    const auto p = split(desc, ':');
    if (p.size() == 3 && p[0] == "halfspace") {
        return gauss::HalfSpace{parse_int(p[1], desc), parse_double(p[2], desc)};
    }
    if (p.size() == 2 && p[0] == "halfspace") {
        return gauss::HalfSpace{1, parse_double(p[1], desc)};
    }
    if (p.size() == 3 && p[0] == "ball") {
        return gauss::CenteredBall{parse_int(p[1], desc), parse_double(p[2], desc)};
    }
    if (p.size() == 2 && p[0] == "origin") {
        return gauss::Origin{parse_int(p[1], desc)};
    }
    if (p.size() == 2 && p[0] == "fullspace") {
        return gauss::FullSpace{parse_int(p[1], desc)};
    }
    throw ConfigError("unknown Gaussian-side set '" + desc + "' (halfspace:d:u, ball:d:rho, origin:d, fullspace:d)");
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what)
{
    std::vector<int> out;
    for (const auto& part : split(s, ',')) {
        out.push_back(parse_int(part, what));
    }
    if (out.empty()) {
        throw ConfigError("empty list for " + what);
    }
    return out;
}

Rational parse_rational(const std::string& s)
{
    try {
        Rational q(s);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw ConfigError("bad rational coefficient '" + s + "' (use p or p/q)");
    }
}

// ---------------------------------------------------------------------------
// output

json exact_entry(const PiScalar& x)
{
    return json{{"exact", x.to_string()}, {"value", float_of(x)}};
}

json report_json(const sim::McReport& r)
{
    return json{{"estimate", r.estimate},       {"stderr", r.stderr_}, {"n_samples", r.n_samples},
                {"prediction", r.prediction},   {"z_score", r.z_score}, {"seed", r.seed},
                {"stream_id", r.stream_id},     {"verdict", sim::to_string(r.verdict())}};
}

std::string format_double(double x)
{
    if (!std::isfinite(x)) {
        return "null";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Deterministic JSON: keys sorted (nlohmann's default object map), floats at
/// 17 significant digits, non-finite floats as null.
void write_json(std::ostream& os, const json& j, int indent = 0)
{
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            os << (first ? "" : ",\n") << pad << json(it.key()).dump() << ": ";
            write_json(os, it.value(), indent + 2);
            first = false;
        }
        os << "\n" << close << "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        os << "[\n";
        bool first = true;
        for (const auto& v : j) {
            os << (first ? "" : ",\n") << pad;
            write_json(os, v, indent + 2);
            first = false;
        }
        os << "\n" << close << "]";
        return;
    }
    case json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
    }
}

std::string csv_cell(const json& v)
{
    if (v.is_null()) {
        return "";
    }
    if (v.is_number_float()) {
        const double x = v.get<double>();
        return std::isfinite(x) ? format_double(x) : "";
    }
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string q = "\"";
        for (char c : s) {
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        }
        return q + "\"";
    }
    return v.dump();
}

void write_csv(std::ostream& os, const std::vector<std::string>& columns, const json& rows)
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        os << (i ? "," : "") << columns[i];
    }
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            os << (i ? "," : "") << (row.contains(columns[i]) ? csv_cell(row[columns[i]]) : "");
        }
        os << "\n";
    }
}

/// What a command hands back: the full results object, the flat rows used for
/// CSV output with their column order, and whether a gate failed.
struct CommandResult {
    json results = json::object();
    json rows = json::array();
    std::vector<std::string> columns;
    bool gate_failed = false;
};

// ---------------------------------------------------------------------------
// commands

struct Options {
    std::string what = "omega";
    int max = 8;
    int N = 10;
    int k_max = -1;
    std::string from = "sigma";
    std::string to = "u";
    std::string coeffs;
    std::string A = "sphere:2";
    std::string D = "halfspace:1:0";
    std::string m = "0";
    std::string law = "inf";
    std::int64_t samples = 100000;
    std::string N_list = "100,400,1600";
    int d = 1;
    int inner = 16;
    std::string sampler = "geometric";
};

CommandResult cmd_tables(const Options& o)
{
    if (o.max < 0 || o.max > 200) {
        throw ConfigError("--max must lie in [0, 200]");
    }
    CommandResult r;
    r.columns = {"index", "exact", "value"};
    auto add = [&](int i, const PiScalar& x) {
        json row = exact_entry(x);
        row["index"] = i;
        r.rows.push_back(row);
    };
    if (o.what == "omega") {
        for (int n = 0; n <= o.max; ++n) add(n, omega(n));
    } else if (o.what == "alpha") {
        for (int n = 0; n <= o.max; ++n) add(n, alpha(n));
    } else if (o.what == "ball_mu") {
        if (o.N < 1 || o.N > 200) {
            throw ConfigError("--N must lie in [1, 200] for ball_mu");
        }
        for (int k = 0; k <= o.N; ++k) add(k, lk::euclidean_ball_mu(o.N, k));
        r.results["N"] = o.N;
    } else if (o.what == "gkf_coefficient") {
        for (int k = 0; k <= o.max; ++k) add(k, kin::gkf_coefficient(k));
    } else {
        throw ConfigError("--what must be omega, alpha, ball_mu or gkf_coefficient");
    }
    r.results["table"] = o.what;
    r.results["rows"] = r.rows;
    return r;
}

CommandResult cmd_convert(const Options& o)
{
    lk::Basis from, to;
    try {
        from = lk::basis_from_string(o.from);
        to = lk::basis_from_string(o.to);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const auto parts = split(o.coeffs, ',');
    if (parts.empty() || static_cast<int>(parts.size()) > o.N + 1) {
        throw ConfigError("--coeffs needs between 1 and N+1 comma-separated rationals");
    }
    kin::check_exact_N(o.N);
    lk::ValuationVector v(o.N, from);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        v[static_cast<int>(i)] = PiScalar(parse_rational(parts[i]));
    }
    const lk::ValuationVector w = lk::change_basis(v, to);
    CommandResult r;
    r.columns = {"index", "exact", "value"};
    for (int i = 0; i <= o.N; ++i) {
        json row = exact_entry(w[i]);
        row["index"] = i;
        r.rows.push_back(row);
    }
    r.results = {{"N", o.N}, {"from", std::string(lk::to_string(from))}, {"to", std::string(lk::to_string(to))},
                 {"coefficients", r.rows}};
    return r;
}

CommandResult cmd_nu(const Options& o, const std::optional<std::string>& D_desc)
{
    kin::check_exact_N(o.N);
    if (o.N < 1) {
        throw ConfigError("--N must be at least 1");
    }
    const int k_max = o.k_max < 0 ? o.N : std::min(o.k_max, o.N);
    const kin::NuTable table = kin::nu_table(o.N);
    CommandResult r;
    json rows = json::array();
    for (int k = 0; k <= k_max; ++k) {
        json coeffs = json::array();
        for (int i = 0; i <= o.N; ++i) {
            coeffs.push_back(table[k][static_cast<std::size_t>(i)].to_string());
        }
        rows.push_back({{"k", k}, {"sigma_coefficients", coeffs}});
    }
    r.results = {{"N", o.N}, {"nu_in_sigma", rows}};
    r.columns = {"k", "sigma_coefficients"};
    r.rows = json::array();
    for (const auto& row : rows) {
        std::string joined;
        for (const auto& c : row["sigma_coefficients"]) {
            joined += (joined.empty() ? "" : " ; ") + c.get<std::string>();
        }
        r.rows.push_back({{"k", row["k"]}, {"sigma_coefficients", joined}});
    }
    if (D_desc) {
        const gauss::GaussSet D = parse_gauss_set(*D_desc);
        const lk::ModelSet lifted = sim::lift_gauss_set(D, o.N);
        const auto sig = lk::sigma_values(lifted);
        const auto g = gauss::gamma(D, k_max);
        json evals = json::array();
        r.rows = json::array();
        r.columns = {"k", "nu", "limit"};
        for (int k = 0; k <= k_max; ++k) {
            const double nu = lk::basis_value(lk::Basis::Nu, k, sig);
            const double limit = float_of(kin::nu_limit_constant(k)) * g.values[static_cast<std::size_t>(k)];
            json row = {{"k", k}, {"nu", nu}, {"limit", limit}};
            evals.push_back(row);
            r.rows.push_back(row);
        }
        r.results["D"] = gauss::describe(D);
        r.results["D_N"] = lk::describe(lifted);
        r.results["evaluations"] = evals;
    }
    return r;
}

CommandResult cmd_predict(const Options& o)
{
    const lk::ModelSet A = parse_sphere_set(o.A);
    const gauss::GaussSet D = parse_gauss_set(o.D);
    const int n = lk::ambient_dimension(A);
    const int m = o.m == "top" ? sim::top_degree(A) : parse_int(o.m, "--m");
    const double p = gauss::gkf_predict(A, D, m);
    const auto g = gauss::gamma(D, std::max(0, n - m));
    json gam = json::array();
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        json e = {{"k", k}, {"value", g.values[k]}};
        if (g.exact[k]) {
            e["exact"] = g.exact[k]->to_string();
        }
        gam.push_back(e);
    }
    CommandResult r;
    r.results = {{"A", lk::describe(A)}, {"D", gauss::describe(D)}, {"m", m}, {"prediction", p}, {"gamma", gam}};
    r.columns = {"A", "D", "m", "prediction"};
    r.rows.push_back({{"A", lk::describe(A)}, {"D", gauss::describe(D)}, {"m", m}, {"prediction", p}});
    return r;
}

sim::LawChoice parse_law(const std::string& s)
{
    if (s == "inf") {
        return {sim::Law::PiInfinity, 0};
    }
    const auto p = split(s, ':');
    if (p.size() == 2 && p[0] == "N") {
        return {sim::Law::PiN, parse_int(p[1], "--law")};
    }
    throw ConfigError("--law must be 'inf' or 'N:<N>'");
}

CommandResult cmd_simulate(const Options& o, const sim::RunOptions& run)
{
    const lk::ModelSet A = parse_sphere_set(o.A);
    const gauss::GaussSet D = parse_gauss_set(o.D);
    sim::Degree degree;
    if (o.m == "0") {
        degree = sim::Degree::Zero;
    } else if (o.m == "top") {
        degree = sim::Degree::Top;
    } else {
        throw ConfigError("--m must be 0 or top for simulate");
    }
    if (o.samples < 1) {
        throw ConfigError("--samples must be positive");
    }
    const sim::LawChoice law = parse_law(o.law);
    const sim::McReport rep = sim::estimate_lhs(A, D, degree, law, o.samples, run, o.inner);
    CommandResult r;
    json row = report_json(rep);
    row["law"] = o.law;
    r.results = {{"A", lk::describe(A)}, {"D", gauss::describe(D)}, {"m", o.m}, {"report", row}};
    r.columns = {"law", "estimate", "stderr", "n_samples", "prediction", "z_score", "verdict", "seed", "stream_id"};
    r.rows.push_back(row);
    r.gate_failed = rep.verdict() == sim::Verdict::Fail;
    return r;
}

CommandResult cmd_converge(const Options& o, const sim::RunOptions& run)
{
    CommandResult r;
    const std::vector<int> Ns = parse_int_list(o.N_list, "--N-list");
    if (o.samples < 1) {
        throw ConfigError("--samples must be positive");
    }
    r.results["sweep"] = o.what;
    if (o.what == "nu") {
        const gauss::GaussSet D = parse_gauss_set(o.D);
        const auto* ball = std::get_if<gauss::CenteredBall>(&D);
        if (!ball) {
            throw ConfigError("the nu sweep needs --D ball:d:rho");
        }
        const int k_max = o.k_max < 0 ? 2 : o.k_max;
        for (const auto& row : sim::nu_convergence(*ball, k_max, Ns)) {
            r.rows.push_back({{"N", row.N}, {"k", row.k}, {"s", row.s}, {"nu", row.nu}, {"limit", row.limit},
                              {"abs_error", row.abs_error}, {"rel_error", row.rel_error}});
        }
        r.columns = {"N", "k", "s", "nu", "limit", "abs_error", "rel_error"};
        r.results["D"] = gauss::describe(D);
    } else if (o.what == "poincare") {
        sim::PoincareSampler sampler;
        if (o.sampler == "geometric") {
            sampler = sim::PoincareSampler::Geometric;
        } else if (o.sampler == "quantile") {
            sampler = sim::PoincareSampler::Quantile;
        } else {
            throw ConfigError("--sampler must be geometric or quantile");
        }
        for (int N : Ns) {
            const auto res = sim::poincare_test(N, o.d, o.samples, run, sampler);
            r.rows.push_back({{"N", N}, {"d", o.d}, {"ks", res.ks}, {"second_moment", res.second_moment.estimate},
                              {"second_moment_stderr", res.second_moment.stderr_},
                              {"second_moment_prediction", res.second_moment.prediction}});
        }
        r.columns = {"N", "d", "ks", "second_moment", "second_moment_stderr", "second_moment_prediction"};
        r.results["sampler"] = o.sampler;
    } else if (o.what == "pin") {
        const lk::ModelSet A = parse_sphere_set(o.A);
        const gauss::GaussSet D = parse_gauss_set(o.D);
        const auto degree = o.m == "top" ? sim::Degree::Top : sim::Degree::Zero;
        if (o.m != "0" && o.m != "top") {
            throw ConfigError("--m must be 0 or top");
        }
        const sim::McReport inf = sim::estimate_lhs(A, D, degree, {}, o.samples, run, o.inner);
        json row = report_json(inf);
        row["law"] = "inf";
        r.rows.push_back(row);
        sim::McReport last;
        for (int N : Ns) {
            last = sim::estimate_lhs(A, D, degree, {sim::Law::PiN, N}, o.samples, run, o.inner);
            json rn = report_json(last);
            rn["law"] = "N:" + std::to_string(N);
            r.rows.push_back(rn);
        }
        const bool overlap = std::fabs(last.estimate - inf.estimate) <= 3.0 * (last.stderr_ + inf.stderr_);
        r.results["overlap_at_largest_N"] = overlap;
        r.gate_failed = !overlap;
        r.columns = {"law", "estimate", "stderr", "n_samples", "prediction", "z_score", "verdict", "seed", "stream_id"};
        r.results["A"] = lk::describe(A);
        r.results["D"] = gauss::describe(D);
    } else {
        throw ConfigError("--what must be nu, poincare or pin");
    }
    r.results["rows"] = r.rows;
    return r;
}

CommandResult cmd_check()
{
    CommandResult r;
    auto record = [&](const std::string& name, bool ok, const std::string& detail) {
        r.rows.push_back({{"check", name}, {"pass", ok}, {"detail", detail}});
        r.gate_failed = r.gate_failed || !ok;
    };

    {
        int bad = 0;
        for (int N : {5, 10, 20}) {
            for (lk::Basis a : lk::all_bases) {
                lk::ValuationVector v(N, a);
                for (int i = 0; i <= N; ++i) {
                    v[i] = PiScalar::pi_power(i % 5 - 2) * rat(3 * i - 7, i + 2);
                }
                for (lk::Basis b : lk::all_bases) {
                    bad += lk::change_basis(lk::change_basis(v, b), a) == v ? 0 : 1;
                }
            }
        }
        record("basis_round_trips", bad == 0, std::to_string(bad) + " mismatches");
    }
    {
        int bad = 0;
        for (int N = 1; N <= 20; ++N) {
            kin::KinematicTensor direct(N, lk::Basis::Sigma, lk::Basis::Sigma);
            for (int j = 0; N - 2 * j >= 0; ++j) {
                direct += kin::p_sigma(N - 2 * j, N);
            }
            bad += kin::convert_tensor(kin::p_chi(N), lk::Basis::Sigma, lk::Basis::Sigma) == direct ? 0 : 1;
        }
        record("p_chi_identity", bad == 0, std::to_string(bad) + " mismatches for N <= 20");
    }
    {
        int bad = 0;
        for (int N = 1; N <= 20; ++N) {
            for (int k = 0; k <= N; ++k) {
                kin::KinematicTensor expected = kin::p_sigma(N - k, N);
                expected *= PiScalar::half_power(Rational(4 * N), k);
                bad += kin::convert_tensor(kin::p_tau(k, N), lk::Basis::Sigma, lk::Basis::Sigma) == expected ? 0 : 1;
            }
        }
        record("p_tau_p_sigma", bad == 0, std::to_string(bad) + " mismatches for N <= 20");
    }
    {
        double worst = 0.0;
        for (auto [N, d, s, rr] : {std::tuple{20, 2, 1.0, 0.5}, std::tuple{30, 3, 0.8, 0.2}, std::tuple{12, 1, 0.5, 0.7}}) {
            const auto t = kin::tube_volume_identity(N, d, s, rr);
            worst = std::max(worst, std::fabs(t.rhs - t.lhs) / t.lhs);
        }
        record("tube_volume_identity", worst < 1e-8, "max relative difference " + format_double(worst));
    }
    {
        double worst = 0.0;
        for (const gauss::GaussSet& D : {gauss::GaussSet{gauss::HalfSpace{1, 0.0}}, gauss::GaussSet{gauss::HalfSpace{1, 1.0}},
                                         gauss::GaussSet{gauss::CenteredBall{2, 1.0}}, gauss::GaussSet{gauss::CenteredBall{3, 2.0}}}) {
            const auto g = gauss::gamma(D, 4);
            for (int k = 0; k <= 4; ++k) {
                worst = std::max(worst, std::fabs(g.values[static_cast<std::size_t>(k)] - gauss::gamma_fd_oracle(D, k)));
            }
        }
        record("gamma_finite_differences", worst < 1e-6, "max abs difference " + format_double(worst));
    }
    r.columns = {"check", "pass", "detail"};
    r.results["checks"] = r.rows;
    return r;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spherical valuations, kinematic operators and Gaussian kinematic formula workbench"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    Options o;
    std::string format = "json";
    std::string out_path;
    std::uint64_t seed = 1;
    int workers = 1;
    bool timing = false;
    std::optional<std::string> nu_D;

    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--seed", seed, "Monte Carlo seed (GKF_SEED overrides)");
    app.add_option("--workers", workers, "worker threads for simulations")->check(CLI::Range(1, 256));
    app.add_flag("--timing", timing, "add wall time to the provenance block (breaks byte-identical output)");

    auto* tables = app.add_subcommand("tables", "constant tables");
    tables->add_option("--what", o.what, "omega, alpha, ball_mu or gkf_coefficient");
    tables->add_option("--max", o.max, "largest index");
    tables->add_option("--N", o.N, "ambient dimension for ball_mu");

    auto* convert = app.add_subcommand("convert", "change the basis of a coefficient vector");
    convert->add_option("--N", o.N, "sphere dimension")->required();
    convert->add_option("--from", o.from, "source basis")->required();
    convert->add_option("--to", o.to, "target basis")->required();
    convert->add_option("--coeffs", o.coeffs, "comma-separated rationals, index 0 first")->required();

    auto* nu = app.add_subcommand("nu", "nu_k in the sigma basis, optionally evaluated on a lifted set");
    nu->add_option("--N", o.N, "sphere dimension")->required();
    nu->add_option("--k-max", o.k_max, "largest k (default N)");
    nu->add_option("--D", nu_D, "Gaussian-side set to lift and evaluate");

    auto* predict = app.add_subcommand("predict", "closed-form expectation of t^m(A ∩ F^-1 D)");
    predict->add_option("--A", o.A, "sphere-side set")->required();
    predict->add_option("--D", o.D, "Gaussian-side set")->required();
    predict->add_option("--m", o.m, "degree, or 'top'");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the same expectation");
    simulate->add_option("--A", o.A, "sphere-side set")->required();
    simulate->add_option("--D", o.D, "Gaussian-side set")->required();
    simulate->add_option("--m", o.m, "0 or top");
    simulate->add_option("--law", o.law, "inf or N:<N>");
    simulate->add_option("--samples", o.samples, "number of draws");
    simulate->add_option("--inner", o.inner, "points per draw for the top-degree estimator");

    auto* converge = app.add_subcommand("converge", "convergence sweeps over N");
    converge->add_option("--what", o.what, "nu, poincare or pin")->required();
    converge->add_option("--N-list", o.N_list, "comma-separated N values");
    converge->add_option("--D", o.D, "Gaussian-side set (nu, pin)");
    converge->add_option("--A", o.A, "sphere-side set (pin)");
    converge->add_option("--m", o.m, "0 or top (pin)");
    converge->add_option("--k-max", o.k_max, "largest k (nu)");
    converge->add_option("--d", o.d, "projected dimension (poincare)");
    converge->add_option("--sampler", o.sampler, "geometric or quantile (poincare)");
    converge->add_option("--samples", o.samples, "draws per point");
    converge->add_option("--inner", o.inner, "points per draw for the top-degree estimator");

    auto* check = app.add_subcommand("check", "exact identity suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (const char* env = std::getenv("GKF_SEED")) {
        try {
            std::size_t pos = 0;
            seed = std::stoull(env, &pos);
            if (pos != std::string(env).size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            std::cerr << "error: GKF_SEED must be a nonnegative integer\n";
            return 2;
        }
    }

    sim::RunOptions run;
    run.seed = seed;
    run.workers = workers;

    const auto t0 = std::chrono::steady_clock::now();
    CommandResult result;
    std::string command;
    json echo = json::object();
    try {
        if (tables->parsed()) {
            command = "tables";
            echo = {{"what", o.what}, {"max", o.max}, {"N", o.N}};
            result = cmd_tables(o);
        } else if (convert->parsed()) {
            command = "convert";
            echo = {{"N", o.N}, {"from", o.from}, {"to", o.to}, {"coeffs", o.coeffs}};
            result = cmd_convert(o);
        } else if (nu->parsed()) {
            command = "nu";
            echo = {{"N", o.N}, {"k_max", o.k_max}, {"D", nu_D ? json(*nu_D) : json(nullptr)}};
            result = cmd_nu(o, nu_D);
        } else if (predict->parsed()) {
            command = "predict";
            echo = {{"A", o.A}, {"D", o.D}, {"m", o.m}};
            result = cmd_predict(o);
        } else if (simulate->parsed()) {
            command = "simulate";
            echo = {{"A", o.A}, {"D", o.D}, {"m", o.m}, {"law", o.law}, {"samples", o.samples}, {"inner", o.inner}};
            result = cmd_simulate(o, run);
        } else if (converge->parsed()) {
            command = "converge";
            echo = {{"what", o.what}, {"N_list", o.N_list}, {"D", o.D}, {"A", o.A}, {"m", o.m},
                    {"k_max", o.k_max}, {"d", o.d}, {"sampler", o.sampler}, {"samples", o.samples}};
            result = cmd_converge(o, run);
        } else if (check->parsed()) {
            command = "check";
            result = cmd_check();
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["config"] = echo;
    doc["results"] = result.results;
    doc["provenance"] = {{"seed", seed}, {"workers", workers}, {"build_id", GKF_BUILD_ID}};
    if (timing) {
        doc["provenance"]["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot open " << out_path << "\n";
            return 2;
        }
    }
    std::ostream& os = out_path.empty() ? std::cout : file;
    if (format == "csv") {
        write_csv(os, result.columns, result.rows);
    } else {
        write_json(os, doc);
        os << "\n";
    }
    return result.gate_failed ? 1 : 0;
}
