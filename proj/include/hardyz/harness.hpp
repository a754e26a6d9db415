#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "baseline.hpp"
#include "bernoulli.hpp"
#include "big_complex.hpp"
#include "big_real.hpp"
#include "combinatorics.hpp"
#include "eta.hpp"
#include "precision.hpp"
#include "theta.hpp"
#include "z.hpp"

namespace hardyz {

enum class SuiteName {
    theta_bounds,
    stirling,
    qp,
    gamma_series,
    eta_consistency,
    lemma3_identity,
    lemma5_tail,
    afe_error,
    paper_experiment,
};

inline const std::vector<std::pair<SuiteName, std::string>>& suite_registry() {
    static const std::vector<std::pair<SuiteName, std::string>> reg = {
        {SuiteName::theta_bounds, "theta_bounds"},
        {SuiteName::stirling, "stirling"},
        {SuiteName::qp, "qp"},
        {SuiteName::gamma_series, "gamma_series"},
        {SuiteName::eta_consistency, "eta_consistency"},
        {SuiteName::lemma3_identity, "lemma3_identity"},
        {SuiteName::lemma5_tail, "lemma5_tail"},
        {SuiteName::afe_error, "afe_error"},
        {SuiteName::paper_experiment, "paper_experiment"},
    };
    return reg;
}

inline std::string suite_name(SuiteName s) {
    for (const auto& e : suite_registry())
        if (e.first == s) return e.second;
    throw std::invalid_argument("suite_name: unknown suite");
}

inline SuiteName parse_suite_name(const std::string& text) {
    for (const auto& e : suite_registry())
        if (e.second == text) return e.first;
    throw std::invalid_argument("unknown suite '" + text + "'");
}

inline std::vector<SuiteName> all_suites() {
    std::vector<SuiteName> out;
    for (const auto& e : suite_registry()) out.push_back(e.first);
    return out;
}

/// pass/fail mark proven inequalities and exact identities; "recorded" marks
/// ratio regressions whose sharp constants are unknown, held against the
/// calibrated thresholds in baseline.hpp (a recorded check that exceeds its
/// threshold degrades to fail).
enum class CheckStatus { pass, fail, recorded };

inline std::string status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::recorded: return "recorded";
    }
    return "?";
}

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::fail;
    std::string measured;
    std::string bound;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    double wall_time_seconds = 0.0;

    bool ok() const {
        for (const CheckResult& c : checks)
            if (c.status == CheckStatus::fail) return false;
        return true;
    }
};

namespace detail {

inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

/// Short display form that survives exponents beyond double range.
inline std::string fmt_big(const BigReal& x) {
    if (x.is_nan()) return "nan";
    if (x.is_zero()) return "0";
    char* s = nullptr;
    mpfr_asprintf(&s, "%.5Re", x.raw());
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

} // namespace detail

class SuiteBuilder {
public:
    explicit SuiteBuilder(SuiteName name)
        : start_(std::chrono::steady_clock::now()) {
        report_.suite = suite_name(name);
    }

    /// Proven inequality: pass iff measured <= bound (NaN fails).
    void certified(std::string name, const BigReal& measured, const BigReal& bound) {
        const bool ok = !measured.is_nan() && !bound.is_nan() && measured <= bound;
        push(std::move(name), ok ? CheckStatus::pass : CheckStatus::fail,
             detail::fmt_big(measured), detail::fmt_big(bound));
    }

    /// Aggregate of many proven inequalities; `worst` is display-only.
    void certified_flag(std::string name, bool ok, double worst, double bound) {
        push(std::move(name), ok ? CheckStatus::pass : CheckStatus::fail,
             detail::fmt_double(worst), detail::fmt_double(bound));
    }

    /// Exact identity over a family: pass iff no member broke.
    void certified_count(std::string name, long mismatches) {
        push(std::move(name), mismatches == 0 ? CheckStatus::pass : CheckStatus::fail,
             std::to_string(mismatches) + " mismatches", "0 mismatches");
    }

    /// Ratio regression against a calibrated threshold.
    void recorded(std::string name, const BigReal& measured, double threshold) {
        const double m = measured.is_nan() ? std::nan("") : measured.to_double();
        const bool ok = std::isfinite(m) && m <= threshold;
        push(std::move(name), ok ? CheckStatus::recorded : CheckStatus::fail,
             detail::fmt_big(measured), detail::fmt_double(threshold));
    }

    void recorded(std::string name, double measured, double threshold) {
        const bool ok = std::isfinite(measured) && measured <= threshold;
        push(std::move(name), ok ? CheckStatus::recorded : CheckStatus::fail,
             detail::fmt_double(measured), detail::fmt_double(threshold));
    }

    SuiteReport finish() {
        report_.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                .count();
        return std::move(report_);
    }

private:
    void push(std::string name, CheckStatus st, std::string measured, std::string bound) {
        report_.checks.push_back(
            {std::move(name), st, std::move(measured), std::move(bound)});
    }

    SuiteReport report_;
    std::chrono::steady_clock::time_point start_;
};

inline std::string format_report(const SuiteReport& rep) {
    std::ostringstream os;
    os << "suite " << rep.suite << " (" << detail::fmt_double(rep.wall_time_seconds)
       << " s)\n";
    for (const CheckResult& c : rep.checks) {
        os << "  [" << status_name(c.status) << "] " << c.name
           << ": measured " << c.measured << ", bound " << c.bound << "\n";
    }
    return os.str();
}

struct SweepConfig {
    enum class Format { csv, jsonl };

    std::vector<double> t_values;
    int k_min = 0;
    int k_max = 0;
    std::optional<double> c;            // envelope constant; default sqrt(e)
    long target_abs_error_exponent = 0; // 0 = planner default
    std::string output_path;            // empty = in-memory only
    Format format = Format::csv;
    int jobs = 1;
};

inline SweepConfig::Format parse_format(const std::string& text) {
    if (text == "csv") return SweepConfig::Format::csv;
    if (text == "jsonl") return SweepConfig::Format::jsonl;
    throw std::invalid_argument("unknown format '" + text + "'");
}

inline void validate(const SweepConfig& cfg) {
    if (cfg.t_values.empty())
        throw std::invalid_argument("sweep: t_values must be non-empty");
    for (double t : cfg.t_values)
        if (!(t >= 10.0))
            throw std::invalid_argument("sweep: every t must be >= 10");
    if (cfg.k_min > cfg.k_max)
        throw std::invalid_argument("sweep: require k_min <= k_max");
    if (cfg.k_min < 0)
        throw std::invalid_argument("sweep: require k_min >= 0");
    if (cfg.c && !(*cfg.c > 1.0))
        throw std::invalid_argument("sweep: require c > 1");
    if (cfg.jobs < 1)
        throw std::invalid_argument("sweep: require jobs >= 1");
}

inline const char* csv_header() {
    return "t,k,main_sum,reference,residual,theta_prime,normalized,envelope,"
           "envelope_ratio,imag_leak,working_bits,error";
}

namespace detail {

inline std::string fmt_t(double t) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", t);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out;
}

} // namespace detail

inline std::string csv_row(const ResidualRecord& r) {
    std::ostringstream os;
    os << detail::fmt_t(r.t) << ',' << r.k << ',' << to_string(r.main_sum) << ','
       << to_string(r.reference) << ',' << to_string(r.residual) << ','
       << to_string(r.theta_prime) << ',' << to_string(r.normalized) << ','
       << to_string(r.envelope) << ',' << to_string(r.envelope_ratio) << ','
       << to_string(r.imag_leak) << ',' << r.working_bits << ','
       << detail::csv_quote(r.error);
    return os.str();
}

inline std::string jsonl_row(const ResidualRecord& r) {
    std::ostringstream os;
    os << "{\"t\":" << detail::fmt_t(r.t) << ",\"k\":" << r.k
       << ",\"main_sum\":\"" << to_string(r.main_sum)
       << "\",\"reference\":\"" << to_string(r.reference)
       << "\",\"residual\":\"" << to_string(r.residual)
       << "\",\"theta_prime\":\"" << to_string(r.theta_prime)
       << "\",\"normalized\":\"" << to_string(r.normalized)
       << "\",\"envelope\":\"" << to_string(r.envelope)
       << "\",\"envelope_ratio\":\"" << to_string(r.envelope_ratio)
       << "\",\"imag_leak\":\"" << to_string(r.imag_leak)
       << "\",\"working_bits\":" << r.working_bits
       << ",\"error\":\"" << detail::json_escape(r.error) << "\"}";
    return os.str();
}

namespace detail {

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

inline std::string json_unescape(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\' || i + 1 >= s.size()) {
            out += s[i];
            continue;
        }
        ++i;
        switch (s[i]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'u':
            if (i + 4 < s.size()) {
                out += static_cast<char>(std::stoi(s.substr(i + 1, 4), nullptr, 16));
                i += 4;
            }
            break;
        default: out += s[i];
        }
    }
    return out;
}

/// Minimal extractor for the flat one-line objects jsonl_row produces.
inline std::string json_extract(const std::string& line, const std::string& key) {
    const std::string marker = "\"" + key + "\":";
    const std::size_t at = line.find(marker);
    if (at == std::string::npos)
        throw std::invalid_argument("jsonl: missing field '" + key + "'");
    std::size_t i = at + marker.size();
    if (line[i] == '"') {
        std::string raw;
        for (++i; i < line.size(); ++i) {
            if (line[i] == '\\' && i + 1 < line.size()) {
                raw += line[i];
                raw += line[i + 1];
                ++i;
            } else if (line[i] == '"') {
                return json_unescape(raw);
            } else {
                raw += line[i];
            }
        }
        throw std::invalid_argument("jsonl: unterminated string for '" + key + "'");
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ',' && line[j] != '}') ++j;
    return line.substr(i, j - i);
}

} // namespace detail

inline ResidualRecord parse_csv_row(const std::string& line) {
    const std::vector<std::string> f = detail::csv_split(line);
    if (f.size() != 12)
        throw std::invalid_argument("csv row: expected 12 fields, got " +
                                    std::to_string(f.size()));
    ResidualRecord rec;
    rec.working_bits = std::stol(f[10]);
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(64L, rec.working_bits));
    rec.t = std::strtod(f[0].c_str(), nullptr);
    rec.k = std::stoi(f[1]);
    rec.main_sum = from_string(f[2], prec);
    rec.reference = from_string(f[3], prec);
    rec.residual = from_string(f[4], prec);
    rec.theta_prime = from_string(f[5], prec);
    rec.normalized = from_string(f[6], prec);
    rec.envelope = from_string(f[7], prec);
    rec.envelope_ratio = from_string(f[8], prec);
    rec.imag_leak = from_string(f[9], prec);
    rec.error = f[11];
    rec.envelope_extrapolated = rec.k == 0;
    return rec;
}

inline ResidualRecord parse_jsonl_row(const std::string& line) {
    ResidualRecord rec;
    rec.working_bits = std::stol(detail::json_extract(line, "working_bits"));
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(64L, rec.working_bits));
    rec.t = std::strtod(detail::json_extract(line, "t").c_str(), nullptr);
    rec.k = std::stoi(detail::json_extract(line, "k"));
    rec.main_sum = from_string(detail::json_extract(line, "main_sum"), prec);
    rec.reference = from_string(detail::json_extract(line, "reference"), prec);
    rec.residual = from_string(detail::json_extract(line, "residual"), prec);
    rec.theta_prime = from_string(detail::json_extract(line, "theta_prime"), prec);
    rec.normalized = from_string(detail::json_extract(line, "normalized"), prec);
    rec.envelope = from_string(detail::json_extract(line, "envelope"), prec);
    rec.envelope_ratio = from_string(detail::json_extract(line, "envelope_ratio"), prec);
    rec.imag_leak = from_string(detail::json_extract(line, "imag_leak"), prec);
    rec.error = detail::json_extract(line, "error");
    rec.envelope_extrapolated = rec.k == 0;
    return rec;
}

namespace detail {

/// Reads one logical CSV record, joining physical lines while a quoted field
/// is still open.
inline bool read_csv_record(std::istream& in, std::string& rec) {
    rec.clear();
    std::string line;
    bool got = false;
    bool quoted = false;
    while (std::getline(in, line)) {
        if (got) rec += '\n';
        got = true;
        rec += line;
        for (char ch : line)
            if (ch == '"') quoted = !quoted;
        if (!quoted) return true;
    }
    return got;
}

} // namespace detail

inline std::vector<ResidualRecord> import_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != csv_header())
        throw std::invalid_argument("csv import: header mismatch in " + path);
    std::vector<ResidualRecord> out;
    while (detail::read_csv_record(in, line))
        if (!line.empty()) out.push_back(parse_csv_row(line));
    return out;
}

inline std::vector<ResidualRecord> import_records_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<ResidualRecord> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(parse_jsonl_row(line));
    return out;
}

inline void write_records(const std::vector<ResidualRecord>& records,
                          const std::string& path, SweepConfig::Format format) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    if (format == SweepConfig::Format::csv) {
        out << csv_header() << '\n';
        for (const ResidualRecord& r : records) out << csv_row(r) << '\n';
    } else {
        for (const ResidualRecord& r : records) out << jsonl_row(r) << '\n';
    }
    if (!out) throw std::runtime_error("write failed on " + path);
}

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string cache_dir() {
    const char* e = std::getenv("HARDYZ_CACHE_DIR");
    return e ? std::string(e) : std::string();
}

/// The version tag participates in the key, so entries from older layouts are
/// simply never matched.
inline std::string cache_key_text(const std::string& t_text, int k, long working_bits,
                                  const std::string& c_text) {
    return "hardyz-v1|" + t_text + "|" + std::to_string(k) + "|" +
           std::to_string(working_bits) + "|" + c_text;
}

inline std::string cache_path(const std::string& dir, const std::string& key) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(key)));
    return dir + "/" + buf + ".rec";
}

inline std::optional<ResidualRecord> cache_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line.empty()) return std::nullopt;
    try {
        return parse_csv_row(line);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline void cache_store(const std::string& path, const std::string& row) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) return; // cache is best-effort
        out << row << '\n';
    }
    std::rename(tmp.c_str(), path.c_str());
}

} // namespace detail

/// One record per (t, k), t-major, k ascending.  Precision-infeasible records
/// carry the error marker instead of values and are never cached.
inline std::vector<ResidualRecord> run_sweep(const SweepConfig& cfg) {
    validate(cfg);
    const std::string dir = detail::cache_dir();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    const std::size_t k_count = static_cast<std::size_t>(cfg.k_max - cfg.k_min + 1);
    std::vector<ResidualRecord> records(cfg.t_values.size() * k_count);
    std::mutex cache_mu;
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t ti = next.fetch_add(1);
            if (ti >= cfg.t_values.size()) return;
            const double td = cfg.t_values[ti];
            const std::string t_text = detail::fmt_t(td);
            const std::string c_text =
                cfg.c ? detail::fmt_t(*cfg.c) : std::string("default");

            std::optional<PrecisionContext> ctx;
            std::string ctx_error;
            try {
                ctx.emplace(context_for(td, std::max(cfg.k_max, 1),
                                        cfg.target_abs_error_exponent));
            } catch (const std::exception& e) {
                ctx_error = e.what();
            }

            std::optional<ZWorkspace> ws;
            std::optional<BigReal> cb;
            for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
                ResidualRecord& slot =
                    records[ti * k_count + static_cast<std::size_t>(k - cfg.k_min)];
                slot.t = td;
                slot.k = k;
                if (!ctx) {
                    slot.error = ctx_error;
                    continue;
                }
                std::string path;
                if (!dir.empty()) {
                    path = detail::cache_path(
                        dir, detail::cache_key_text(t_text, k, ctx->working_bits, c_text));
                    std::lock_guard<std::mutex> lock(cache_mu);
                    if (std::optional<ResidualRecord> hit = detail::cache_load(path)) {
                        slot = std::move(*hit);
                        continue;
                    }
                }
                try {
                    if (!ws) {
                        ws.emplace(BigReal::of(td, ctx->working_bits),
                                   std::max(cfg.k_max, 1), *ctx);
                        cb = cfg.c ? BigReal::of(*cfg.c, ctx->working_bits)
                                   : exp(BigReal::of(0.5, ctx->working_bits));
                    }
                    slot = residual_record(*ws, k, *cb);
                    if (!path.empty()) {
                        std::lock_guard<std::mutex> lock(cache_mu);
                        detail::cache_store(path, csv_row(slot));
                    }
                } catch (const std::exception& e) {
                    ResidualRecord fresh;
                    slot = fresh;
                    slot.t = td;
                    slot.k = k;
                    slot.working_bits = ctx->working_bits;
                    slot.error = e.what();
                }
            }
        }
    };

    const int n_threads = std::max(
        1, std::min<int>(cfg.jobs, static_cast<int>(cfg.t_values.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    if (!cfg.output_path.empty()) write_records(records, cfg.output_path, cfg.format);
    return records;
}

/// Two-column gnuplot-style data: "<k> <log10 value>" per row, one file per
/// quantity.  Error records are skipped.
inline void export_plot_data(const std::vector<ResidualRecord>& records,
                             const std::string& stem) {
    if (records.empty())
        throw std::invalid_argument("export_plot_data: no records");
    auto emit = [&](const std::string& suffix, auto&& pick) {
        const std::string path = stem + suffix;
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + path);
        for (const ResidualRecord& r : records) {
            if (!r.error.empty()) continue;
            const double lg = log10(pick(r)).to_double();
            if (!std::isfinite(lg)) continue;
            char buf[48];
            std::snprintf(buf, sizeof buf, "%d %.12g", r.k, lg);
            out << buf << '\n';
        }
    };
    emit(".normalized.dat", [](const ResidualRecord& r) { return r.normalized; });
    emit(".envelope_ratio.dat",
         [](const ResidualRecord& r) { return r.envelope_ratio; });
}

namespace detail {

inline void suite_theta_bounds(SuiteBuilder& b, long ovr) {
    for (double td : {1e2, 1e3, 1e4}) {
        const PrecisionContext ctx = context_for(td, 40, ovr);
        const mpfr_prec_t wp = ctx.working_bits;
        const ThetaJet jet = theta_jet(BigReal::of(td, wp), 40, ctx);
        BigReal worst = BigReal::of(0, wp);
        for (int nu = 2; nu <= 40; ++nu)
            worst = max(worst, abs(jet[nu]) / theta_deriv_bound(jet.t, nu, wp));
        b.certified("derivative bound, nu=2..40, t=" + fmt_t(td), worst,
                    BigReal::of(1, wp));
    }

    for (double td : {1e3, 1e4}) {
        const int k = static_cast<int>(std::floor(std::sqrt(td) / 2.0));
        const PrecisionContext ctx = context_for(td, k, ovr);
        const mpfr_prec_t wp = ctx.working_bits;
        const ThetaJet jet = theta_jet(BigReal::of(td, wp), k, ctx);
        CompensatedSum acc(wp);
        BigReal tpow = jet.t;
        for (int nu = 1; nu <= k; ++nu) {
            acc.add(abs(jet[nu]) * tpow /
                    BigReal::factorial(static_cast<unsigned long>(nu), wp));
            tpow *= jet.t;
        }
        b.certified("Taylor mass, k=" + std::to_string(k) + ", t=" + fmt_t(td),
                    acc.value(), jet.t * jet[1] + mul_2si(jet.t, -1));
    }

    {
        bool all = true;
        double worst = 0.0;
        for (int j = 0; j <= 8; ++j) {
            const double td = std::pow(10.0, 1.0 + 0.5 * j);
            const PrecisionContext ctx = context_for(td, 2, ovr);
            const mpfr_prec_t wp = ctx.working_bits;
            const ThetaJet jet = theta_jet(BigReal::of(td, wp), 1, ctx);
            const BigReal delta = jet.t * BigReal::of(1e-3, wp);
            const BigReal lhs = abs(theta(jet.t + delta, ctx) - jet[0] - delta * jet[1]);
            const BigReal rhs =
                mul_2si(delta * delta * theta_deriv_bound(jet.t, 2, wp), 1) +
                BigReal::pow2(-(ctx.target_abs_error_exponent - 4), wp);
            if (!(lhs <= rhs)) all = false;
            worst = std::max(worst, (lhs / rhs).to_double());
        }
        b.certified_flag("branch continuity on geometric grid", all, worst, 1.0);
    }

    {
        bool all = true;
        double worst = 0.0;
        for (double td : {1e2, 1e3, 1e4}) {
            const long tgt = std::max(240L, ovr);
            const PrecisionContext ctx(tgt + 120, 64, tgt);
            const mpfr_prec_t wp = ctx.working_bits;
            const ThetaJet jet = theta_jet(BigReal::of(td, wp), 6, ctx);
            auto th = [&](int i, const BigReal& step) {
                return theta(jet.t + i * step, ctx);
            };
            auto stencil = [&](int nu, const BigReal& step) -> BigReal {
                const BigReal s2 = step * step;
                switch (nu) {
                case 1:
                    return (th(1, step) - th(-1, step)) / mul_2si(step, 1);
                case 2:
                    return (th(1, step) - mul_2si(th(0, step), 1) + th(-1, step)) / s2;
                case 3:
                    return (th(2, step) - mul_2si(th(1, step), 1) +
                            mul_2si(th(-1, step), 1) - th(-2, step)) /
                           (mul_2si(s2, 1) * step);
                case 4:
                    return (th(2, step) - 4 * th(1, step) + 6 * th(0, step) -
                            4 * th(-1, step) + th(-2, step)) /
                           (s2 * s2);
                case 5:
                    return (th(3, step) - 4 * th(2, step) + 5 * th(1, step) -
                            5 * th(-1, step) + 4 * th(-2, step) - th(-3, step)) /
                           (mul_2si(s2 * s2, 1) * step);
                default:
                    return (th(3, step) - 6 * th(2, step) + 15 * th(1, step) -
                            20 * th(0, step) + 15 * th(-1, step) - 6 * th(-2, step) +
                            th(-3, step)) /
                           (s2 * s2 * s2);
                }
            };
            const BigReal h = jet.t * BigReal::of(1e-5, wp);
            for (int nu = 1; nu <= 6; ++nu) {
                const BigReal fine = stencil(nu, h);
                const BigReal coarse = stencil(nu, mul_2si(h, 1));
                const BigReal rich = (mul_2si(fine, 2) - coarse) / 3;
                const double rel = (abs(rich - jet[nu]) / abs(jet[nu])).to_double();
                if (!(rel <= 1e-6)) all = false;
                worst = std::max(worst, rel);
            }
        }
        b.certified_flag("jet matches Richardson differences, nu=1..6", all, worst,
                         1e-6);
    }

    {
        bool all = true;
        double worst = 0.0;
        for (int j = 0; j <= 8; ++j) {
            const double td = std::pow(10.0, 1.0 + 0.5 * j);
            const PrecisionContext ctx = context_for(td, 1, ovr);
            const mpfr_prec_t wp = ctx.working_bits;
            const BigReal t = BigReal::of(td, wp);
            const BigReal gap = abs(theta(t, ctx) - theta_asymptotic(t, wp));
            const BigReal one = BigReal::of(1, wp);
            const BigReal budget = one / mul_2si(t, 3) + one / (t * t * t);
            if (!(gap <= budget)) all = false;
            worst = std::max(worst, (gap / budget).to_double());
        }
        b.certified_flag("asymptotic gap <= 1/(8t) + t^-3", all, worst, 1.0);
    }
}

inline void suite_stirling(SuiteBuilder& b, long) {
    const std::vector<mpq_class> ys = {mpq_class(1), mpq_class(2), mpq_class(7, 2)};
    long mismatches = 0;
    for (unsigned k = 0; k <= 30; ++k) {
        for (const mpq_class& y : ys) {
            mpq_class lhs(0);
            mpq_class yp(1);
            for (unsigned l = 0; l <= k; ++l) {
                const mpz_class mag = abs(StirlingCache::s1(k, l));
                lhs += mpq_class(mag) * yp;
                yp *= y;
            }
            mpq_class rhs(1);
            for (unsigned i = 0; i < k; ++i) rhs *= y + i;
            if (lhs != rhs) ++mismatches;
        }
    }
    b.certified_count("signless row sums equal rising factorials, k<=30", mismatches);

    long sign_breaks = 0;
    for (unsigned k = 0; k <= 30; ++k)
        for (unsigned l = 0; l <= k; ++l) {
            const mpz_class s = StirlingCache::s1(k, l);
            if (s == 0) continue;
            const int want = (k - l) % 2 == 0 ? 1 : -1;
            if (sgn(s) != want) ++sign_breaks;
        }
    b.certified_count("sign pattern (-1)^(k-l)", sign_breaks);
}

inline void suite_qp(SuiteBuilder& b, long ovr) {
    {
        const PrecisionContext ctx = context_for(100.0, 12, ovr);
        const mpfr_prec_t wp = ctx.working_bits;
        const ThetaJet jet = theta_jet(BigReal::of(100, wp), 12, ctx);
        const BellTable table(jet, 12);
        const BigReal tiny = BigReal::pow2(-ctx.target_abs_error_exponent, wp);
        const double tol =
            std::pow(2.0, -static_cast<double>(ctx.target_abs_error_exponent - 8));
        bool all = true;
        double worst = 0.0;
        for (int k = 2; k <= 12; ++k) {
            const std::vector<BigComplex> qa = table.qp_coefficients(k);
            const std::vector<BigComplex> qb = qp_coefficients_enumeration(k, jet);
            for (std::size_t p = 0; p < qb.size(); ++p) {
                const double rel =
                    (abs(qa[p] - qb[p]) / (abs(qb[p]) + tiny)).to_double();
                if (!(rel <= tol)) all = false;
                worst = std::max(worst, rel);
            }
        }
        b.certified_flag("recursion matches partition enumeration, k<=12", all,
                         worst, tol);
    }

    {
        const PrecisionContext ctx = context_for(1e4, 117, ovr);
        const mpfr_prec_t wp = ctx.working_bits;
        const ThetaJet jet = theta_jet(BigReal::of(10000, wp), 117, ctx);
        const BellTable table(jet, 117);
        for (int k : {5, 10, 20, 40, 80, 117}) {
            const QpWeightedSum w = qp_weighted_sum(table, k);
            b.recorded("correction mass ratio, k=" + std::to_string(k),
                       w.sum / w.envelope, baseline().qp_weighted_ratio_max);
        }
    }
}

/// Romberg integration of u^m e^-u over [0, x]; the oracle side of the
/// incomplete-gamma cross-check.
inline BigReal romberg_gamma(unsigned m, const BigReal& x, mpfr_prec_t prec) {
    auto f = [&](const BigReal& u) { return pow_ui(u, m) * exp(-u); };
    const BigReal f0 = m == 0 ? BigReal::of(1, prec) : BigReal::of(0, prec);
    std::vector<BigReal> prev{mul_2si(x * (f0 + f(x)), -1)};
    const BigReal tol = BigReal::pow2(-70, prec);
    for (int i = 1; i <= 16; ++i) {
        const long n = 1L << i;
        CompensatedSum acc(prec);
        for (long j = 1; j < n; j += 2) acc.add(f(x * j / n));
        std::vector<BigReal> cur{mul_2si(prev[0], -1) + x / n * acc.value()};
        BigReal pw4 = BigReal::of(1, prec);
        for (int l = 1; l <= i; ++l) {
            pw4 = mul_2si(pw4, 2);
            cur.push_back(cur[static_cast<std::size_t>(l - 1)] +
                          (cur[static_cast<std::size_t>(l - 1)] -
                           prev[static_cast<std::size_t>(l - 1)]) /
                              (pw4 - 1));
        }
        if (i >= 3 && abs(cur.back() - prev.back()) <= tol * abs(cur.back()))
            return cur.back();
        prev = std::move(cur);
    }
    return prev.back();
}

inline void suite_gamma_series(SuiteBuilder& b, long) {
    const mpfr_prec_t wp = 256;
    {
        bool all = true;
        double worst = 0.0;
        for (unsigned m = 0; m <= 8; ++m)
            for (double xd : {0.5, 1.0, 3.0, 10.0}) {
                const BigReal x = BigReal::of(xd, wp);
                const BigReal series = lower_incomplete_gamma(m + 1, x, wp);
                const BigReal quad = romberg_gamma(m, x, wp);
                const double rel = (abs(series - quad) / series).to_double();
                if (!(rel <= 1e-15)) all = false;
                worst = std::max(worst, rel);
            }
        b.certified_flag("series matches Romberg quadrature, m<=8", all, worst,
                         1e-15);
    }

    {
        // computed with mpmath (gammainc, 50 significant digits)
        struct Anchor {
            unsigned a;
            double x;
            const char* value;
        };
        const Anchor anchors[] = {
            {1, 1.0, "0.63212055882855767840447622983853913255418886896823"},
            {2, 2.0, "0.59399415029016192431800151508254678977710536227127"},
            {5, 3.0, "4.4336821314294704091184306495257217837420602699497"},
        };
        bool all = true;
        double worst = 0.0;
        for (const Anchor& a : anchors) {
            const BigReal got =
                lower_incomplete_gamma(a.a, BigReal::of(a.x, wp), wp);
            const BigReal want = from_string(a.value, wp);
            const double rel = (abs(got - want) / abs(want)).to_double();
            if (!(rel <= 1e-40)) all = false;
            worst = std::max(worst, rel);
        }
        b.certified_flag("frozen anchors", all, worst, 1e-40);
    }

    {
        bool all = true;
        double worst = 0.0;
        const std::pair<unsigned, double> grid[] = {{1, 1.0}, {4, 3.0}, {8, 10.0}};
        for (const auto& [a, xd] : grid) {
            const BigReal x = BigReal::of(xd, wp);
            const BigReal lhs = lower_incomplete_gamma(a + 1, x, wp);
            const BigReal rhs = static_cast<long>(a) * lower_incomplete_gamma(a, x, wp) -
                                pow_ui(x, a) * exp(-x);
            const double rel = (abs(lhs - rhs) / abs(lhs)).to_double();
            if (!(rel <= std::pow(2.0, -200))) all = false;
            worst = std::max(worst, rel);
        }
        b.certified_flag("recurrence gamma(a+1,x) = a gamma(a,x) - x^a e^-x", all,
                         worst, std::pow(2.0, -200));
    }
}

inline void suite_eta_consistency(SuiteBuilder& b, long ovr) {
    for (double td : {1e3, 1e4}) {
        const PrecisionContext ctx = context_for(td, 40, ovr);
        const mpfr_prec_t wp = ctx.working_bits;
        const ThetaJet jet = theta_jet(BigReal::of(td, wp), 1, ctx);
        PhiPowerCache cache(jet.t, wp);
        bool all = true;
        double worst = 0.0;
        for (int p : {0, 3, 10, 40}) {
            const EtaParams prm(jet.t, jet[1], p, ctx);
            const EtaValue base = eta_reference(prm, cache);
            const EtaValue fine = eta_reference(prm, cache, EmOverride{2, 10});
            const BigReal diff = abs(base.value - fine.value);
            if (!(diff <= mul_2si(base.envelope, 1))) all = false;
            worst = std::max(worst, (diff / base.envelope).to_double());
        }
        b.certified_flag("refinement doubling within 2x envelope, t=" + fmt_t(td),
                         all, worst, 2.0);
    }

    {
        // computed with mpmath (zeta, 45 significant digits)
        struct Anchor {
            double t;
            const char* re;
            const char* im;
        };
        const Anchor anchors[] = {
            {100.0, "2.69261988568132409047609647052159057706303023",
             "-0.0203860296025981617707268532983215209917264719"},
            {1000.0, "0.356334367194396055074402476711029641875046211",
             "0.931997831232993665115060432737056074160354802"},
            {10000.0, "-0.33937380263883445756747107794598938056664681",
             "-0.0370915059732060314743442068130120234022523694"},
        };
        bool all = true;
        double worst = 0.0;
        for (const Anchor& a : anchors) {
            const PrecisionContext ctx = context_for(a.t, 1, ovr);
            const mpfr_prec_t wp = ctx.working_bits;
            const BigReal t = BigReal::of(a.t, wp);
            PhiPowerCache cache(t, wp);
            const EtaValue v =
                eta_reference(EtaParams(t, BigReal::of(1, wp), 0, ctx), cache);
            const BigComplex want(from_string(a.re, 256), from_string(a.im, 256));
            const double rel = (abs(v.value - want) / abs(want)).to_double();
            if (!(rel <= 1e-25)) all = false;
            worst = std::max(worst, rel);
        }
        b.certified_flag("eta_0 matches frozen zeta anchors", all, worst, 1e-25);
    }

    {
        const PrecisionContext ctx(256, 64, 120);
        const BigReal t = BigReal::of(1000, 256);
        PhiPowerCache cache(t, 256);
        const EtaParams prm(t, BigReal::of(1, 256), 0, ctx);
        const EtaValue a = eta_reference(prm, cache);
        const EtaValue bb = eta_reference(prm, cache, EmOverride{3, 7});
        b.certified_flag(
            "eta_0 matches independent configuration at 256 bits",
            (abs(a.value - bb.value) / abs(a.value)).to_double() <= 1e-20,
            (abs(a.value - bb.value) / abs(a.value)).to_double(), 1e-20);
    }

    {
        const PrecisionContext ctx = context_for(1e3, 4, ovr);
        const mpfr_prec_t wp = ctx.working_bits;
        const BigReal t = BigReal::of(1000, wp);
        const ThetaJet jet = theta_jet(t, 1, ctx);
        PhiPowerCache cache(t, wp);
        const EtaValue v1 =
            eta_reference(EtaParams(t, BigReal::of(1, wp), 0, ctx), cache);
        const EtaValue v2 = eta_reference(EtaParams(t, jet[1], 0, ctx), cache);
        const EtaValue v3 =
            eta_reference(EtaParams(t, BigReal::of(5, wp), 0, ctx), cache);
        const bool same = (v1.value.re - v2.value.re).is_zero() &&
                          (v1.value.im - v2.value.im).is_zero() &&
                          (v1.value.re - v3.value.re).is_zero() &&
                          (v1.value.im - v3.value.im).is_zero();
        b.certified_count("p=0 value independent of d", same ? 0 : 1);
    }

    {
        // Schwarz reflection: evaluating the same Euler-Maclaurin formula at
        // conj(s) must reproduce conj(eta_0) within twice the envelope.
        const PrecisionContext ctx = context_for(1e3, 4, ovr);
        const mpfr_prec_t wp = ctx.working_bits;
        const BigReal t = BigReal::of(1000, wp);
        PhiPowerCache cache(t, wp);
        const EtaValue base =
            eta_reference(EtaParams(t, BigReal::of(1, wp), 0, ctx), cache);
        const long m = base.m_cutoff;
        const BigComplex sbar(BigReal::pow2(-1, wp), -t);
        const BigComplex one = BigComplex::of(1, 0, wp);
        CompensatedComplexSum acc(wp);
        for (long n = 1; n < m; ++n) {
            const BigReal lnn = cache.ln(n);
            acc.add(exp(BigComplex(mul_2si(-lnn, -1), t * lnn)));
        }
        const BigReal lnm = cache.ln(m);
        const BigComplex phim = exp(BigComplex(mul_2si(-lnm, -1), t * lnm));
        acc.add(BigReal::of(m, wp) * phim / (sbar - one));
        acc.add(BigComplex(mul_2si(phim.re, -1), mul_2si(phim.im, -1)));
        BigComplex xp = phim / BigReal::of(m, wp);
        const BigReal m2 = BigReal::of(m, wp) * m;
        for (int l = 1; l <= base.correction_order; ++l) {
            acc.add(bernoulli_over_factorial(2 * static_cast<unsigned>(l), wp) *
                    pochhammer(sbar, static_cast<unsigned long>(2 * l - 1)) * xp);
            xp = xp / m2;
        }
        const BigReal diff = abs(conj(base.value) - acc.value());
        const BigReal bound =
            mul_2si(base.envelope, 1) +
            BigReal::pow2(-(ctx.target_abs_error_exponent - 4), wp);
        b.certified("conjugation symmetry at t=1000", diff, bound);
    }
}

inline void suite_lemma3_identity(SuiteBuilder& b, long ovr) {
    const PrecisionContext ctx = context_for(1e4, 16, ovr);
    const mpfr_prec_t wp = ctx.working_bits;
    const ThetaJet jet = theta_jet(BigReal::of(10000, wp), 1, ctx);
    const BigReal& d = jet[1];
    const BigReal c = exp(BigReal::of(0.5, wp));
    PhiPowerCache cache(jet.t, wp);

    for (int p : {4, 8, 16}) {
        const ConjugateShortSum r = conjugate_short_sum_check(
            EtaParams(jet.t, d, p, ctx), jet[0], c, cache);
        b.recorded("conjugate short sum normalized, p=" + std::to_string(p),
                   r.normalized, baseline().eq9_normalized_max);
    }

    {
        bool all = true;
        BigReal worst = BigReal::of(0, wp);
        for (const BigReal& dd : {BigReal::of(2, wp), d}) {
            for (int p : {4, 8}) {
                if (dd > BigReal::of(p, wp)) continue;
                const long x0 = (c * exp(mul_2si(dd, 1))).ceil_long();
                for (long mult : {1L, 2L, 10L}) {
                    const long x = x0 * mult;
                    const BigReal lnx = log(BigReal::of(x, wp));
                    for (int k = 1; k <= p + 5; ++k) {
                        const BigReal lhs = abs(g_deriv(x, p, k, dd, wp));
                        const BigReal rhs =
                            BigReal::factorial(static_cast<unsigned long>(k), wp) *
                            pow_ui(BigReal::of(p, wp) / dd,
                                   static_cast<unsigned long>(k)) *
                            pow_ui(lnx - dd, static_cast<unsigned long>(p)) /
                            pow_ui(BigReal::of(x, wp), static_cast<unsigned long>(k));
                        const BigReal ratio = lhs / rhs;
                        if (!(ratio <= BigReal::of(1, wp))) all = false;
                        worst = max(worst, ratio);
                    }
                }
            }
        }
        b.certified_flag("g-derivative bound past the split point", all,
                         worst.to_double(), 1.0);
    }

    {
        const long n2 = (c * exp(mul_2si(d, 1))).floor_long() + 1;
        const BigReal fac = mul_2si(BigReal::pi(wp), 1) / c;
        for (int p : {4, 8}) {
            const BigReal rhs_base =
                pow(c, BigReal::of(p, wp) / d) *
                pow_ui(d, static_cast<unsigned long>(p)) / sqrt(jet.t);
            BigReal fpow = BigReal::of(1, wp);
            BigReal worst = BigReal::of(0, wp);
            for (int k = 0; k <= 40; ++k) {
                worst = max(worst, abs(phi_deriv(cache, n2, p, k, d)) /
                                       (fpow * rhs_base));
                fpow *= fac;
            }
            b.recorded("phi derivative decay at N2, p=" + std::to_string(p), worst,
                       baseline().phi_deriv_ratio_max);
        }
    }
}

inline void suite_lemma5_tail(SuiteBuilder& b, long ovr) {
    const PrecisionContext ctx = context_for(1e4, 8, ovr);
    const mpfr_prec_t wp = ctx.working_bits;
    const ThetaJet jet = theta_jet(BigReal::of(10000, wp), 1, ctx);
    const BigReal& d = jet[1];
    const BigReal c = exp(BigReal::of(0.5, wp));
    PhiPowerCache cache(jet.t, wp);
    const long n1 = (c * exp(mul_2si(d, 1))).floor_long();

    CompensatedComplexSum acc4(wp), acc8(wp);
    long n = n1 + 1;
    for (long stop : {100000L, 1000000L}) {
        for (; n <= stop; ++n) {
            const BigComplex nums = cache.pow_minus_s(n);
            const BigReal w4 = pow_ui(cache.ln(n) - d, 4);
            acc4.add(nums * w4);
            acc8.add(nums * (w4 * w4));
        }
        const BigReal lnN = cache.ln(stop);
        const BigReal rootN = sqrt(BigReal::of(stop, wp));
        const struct {
            int p;
            const CompensatedComplexSum* acc;
        } rows[] = {{4, &acc4}, {8, &acc8}};
        for (const auto& row : rows) {
            const BigReal disc =
                abs(row.acc->value() + phi_antiderivative(cache, stop, row.p, d));
            const BigReal env =
                pow(c, BigReal::of(row.p, wp) / d) *
                    pow_ui(d, static_cast<unsigned long>(row.p)) / sqrt(jet.t) +
                pow_ui(lnN, static_cast<unsigned long>(row.p)) / rootN;
            b.recorded("tail vs antiderivative, p=" + std::to_string(row.p) +
                           ", N=" + std::to_string(stop),
                       disc / env, baseline().eq14_ratio_max);
        }
    }
}

inline void suite_afe_error(SuiteBuilder& b, long ovr) {
    {
        const PrecisionContext ctx = context_for(100.0, 4, ovr);
        const mpfr_prec_t wp = ctx.working_bits;
        const BigReal t = BigReal::of(100, wp);
        const ThetaJet jet = theta_jet(t, 1, ctx);
        PhiPowerCache cache(t, wp);
        const EtaParams prm(t, jet[1], 0, ctx);
        const EtaValue ref = eta_reference(prm, cache);
        const EtaValue trunc = eta_truncated_afe(prm, cache, 1000000L);
        b.recorded("truncation discrepancy, p=0, t=100, N=1e6",
                   abs(trunc.value - ref.value) / trunc.envelope,
                   baseline().truncated_afe_ratio_max);
    }

    {
        const PrecisionContext ctx = context_for(1e4, 4, ovr);
        const mpfr_prec_t wp = ctx.working_bits;
        const BigReal t = BigReal::of(10000, wp);
        const ThetaJet jet = theta_jet(t, 1, ctx);
        PhiPowerCache cache(t, wp);
        const EtaParams prm(t, jet[1], 2, ctx);
        const EtaValue ref = eta_reference(prm, cache);
        std::vector<BigReal> ratios;
        for (long n_cut : {100000L, 400000L, 1600000L}) {
            const EtaValue trunc = eta_truncated_afe(prm, cache, n_cut);
            ratios.push_back(abs(trunc.value - ref.value) / trunc.envelope);
            b.recorded("truncation discrepancy, p=2, t=1e4, N=" +
                           std::to_string(n_cut),
                       ratios.back(), baseline().truncated_afe_ratio_max);
        }
        BigReal growth = BigReal::of(0, wp);
        for (std::size_t i = 1; i < ratios.size(); ++i)
            growth = max(growth, ratios[i] / ratios[i - 1]);
        b.recorded("truncation ratio growth under N -> 4N", growth,
                   baseline().truncated_afe_growth_max);
    }

    {
        const PrecisionContext ctx = context_for(1e4, 30, ovr);
        const mpfr_prec_t wp = ctx.working_bits;
        const BigReal t = BigReal::of(10000, wp);
        const ThetaJet jet = theta_jet(t, 1, ctx);
        PhiPowerCache cache(t, wp);
        const BigReal c = exp(BigReal::of(0.5, wp));
        BigReal ratio30(wp);
        for (int p : {0, 1, 4, 30}) {
            const EtaParams prm(t, jet[1], p, ctx);
            const EtaValue ref = eta_reference(prm, cache);
            const EtaValue afe = eta_afe(prm, jet[0], c, cache);
            const BigReal ratio = abs(afe.value - ref.value) / afe.envelope;
            if (p == 30) ratio30 = ratio;
            b.recorded("short AFE vs reference, p=" + std::to_string(p), ratio,
                       p == 0 ? baseline().short_afe_p0_ratio_max
                              : baseline().short_afe_ratio_max);
        }

        const PrecisionContext ctx2 = context_for(4e3, 30, ovr);
        const mpfr_prec_t wp2 = ctx2.working_bits;
        const BigReal t2 = BigReal::of(4000, wp2);
        const ThetaJet jet2 = theta_jet(t2, 1, ctx2);
        PhiPowerCache cache2(t2, wp2);
        const EtaParams prm2(t2, jet2[1], 30, ctx2);
        const EtaValue ref2 = eta_reference(prm2, cache2);
        const EtaValue afe2 =
            eta_afe(prm2, jet2[0], exp(BigReal::of(0.5, wp2)), cache2);
        const BigReal ratio2 = abs(afe2.value - ref2.value) / afe2.envelope;
        b.recorded("short AFE trend, p=30, t=4e3 -> 1e4",
                   ratio30.to_double() / ratio2.to_double(),
                   baseline().short_afe_trend_growth_max);
    }
}

inline void suite_paper_experiment(SuiteBuilder& b, long ovr) {
    const PrecisionContext ctx = context_for(1e4, 117, ovr);
    ZWorkspace ws(BigReal::of(10000, ctx.working_bits), 117, ctx);
    const mpfr_prec_t wp = ctx.working_bits;

    BigReal worst_norm = BigReal::of(0, wp);
    BigReal worst_leak = BigReal::of(0, wp);
    BigReal worst_env = BigReal::of(0, wp);
    bool leak_ok = true;
    long readd_breaks = 0;
    for (int k = 1; k <= 117; ++k) {
        const ResidualRecord rec = residual_record(ws, k);
        worst_norm = max(worst_norm, rec.normalized);
        const BigReal budget = mul_2si(
            abs(rec.reference) +
                pow_ui(rec.theta_prime, static_cast<unsigned long>(k)),
            16 - ctx.target_abs_error_exponent);
        if (!(rec.imag_leak <= budget)) leak_ok = false;
        worst_leak = max(worst_leak, rec.imag_leak / budget);
        if (!(rec.residual - (rec.main_sum - rec.reference)).is_zero())
            ++readd_breaks;
        if (k >= 4 && k <= 40) worst_env = max(worst_env, rec.envelope_ratio);
    }
    b.certified("max normalized residual, k=1..117", worst_norm,
                BigReal::of(0.05, wp));
    b.certified_flag("imaginary leak within budget, k=1..117", leak_ok,
                     worst_leak.to_double(), 1.0);
    b.certified_count("residual re-add identity", readd_breaks);
    b.recorded("envelope ratio, k=4..40", worst_env,
               baseline().envelope_ratio_max);

    double prev = 0.0;
    double worst_growth = 0.0;
    for (double td : {1e3, 4e3, 1e4}) {
        const PrecisionContext c5 = context_for(td, 5, ovr);
        ZWorkspace w5(BigReal::of(td, c5.working_bits), 5, c5);
        const double norm = residual_record(w5, 5).normalized.to_double();
        if (prev > 0.0) worst_growth = std::max(worst_growth, norm / prev);
        prev = norm;
    }
    b.recorded("k=5 normalized growth, t=1e3..1e4", worst_growth,
               baseline().normalized_trend_growth_max);
}

} // namespace detail

/// `target_abs_error_exponent` > 0 tightens every precision plan the suite
/// draws; 0 keeps the planner defaults.
inline SuiteReport verify_suite(SuiteName name, long target_abs_error_exponent = 0) {
    SuiteBuilder b(name);
    switch (name) {
    case SuiteName::theta_bounds:
        detail::suite_theta_bounds(b, target_abs_error_exponent);
        break;
    case SuiteName::stirling:
        detail::suite_stirling(b, target_abs_error_exponent);
        break;
    case SuiteName::qp:
        detail::suite_qp(b, target_abs_error_exponent);
        break;
    case SuiteName::gamma_series:
        detail::suite_gamma_series(b, target_abs_error_exponent);
        break;
    case SuiteName::eta_consistency:
        detail::suite_eta_consistency(b, target_abs_error_exponent);
        break;
    case SuiteName::lemma3_identity:
        detail::suite_lemma3_identity(b, target_abs_error_exponent);
        break;
    case SuiteName::lemma5_tail:
        detail::suite_lemma5_tail(b, target_abs_error_exponent);
        break;
    case SuiteName::afe_error:
        detail::suite_afe_error(b, target_abs_error_exponent);
        break;
    case SuiteName::paper_experiment:
        detail::suite_paper_experiment(b, target_abs_error_exponent);
        break;
    }
    return b.finish();
}

} // namespace hardyz
