#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paperfold/catalanz.hpp"
#include "paperfold/cfseries.hpp"
#include "paperfold/error.hpp"
#include "paperfold/gf2sign.hpp"
#include "paperfold/report.hpp"
#include "paperfold/seq.hpp"

namespace paperfold::cli {

using json = nlohmann::ordered_json;

enum exit_code : int { kOk = 0, kFailed = 1, kUsage = 2, kGuard = 3 };

// ---------------------------------------------------------------------------
// Verification suites

struct SuiteContext {
  std::size_t size = 0;
  std::size_t order = 512;
  std::uint64_t seed = 1;
};

struct Suite {
  std::string name;
  std::size_t default_size;  // also the ceiling applied by `verify --suite all`
  bool conjecture = false;
  std::function<VerifyReport(const SuiteContext&)> run;
};

inline constexpr std::size_t kEpsDraws = 10;

inline const std::vector<Suite>& suites() {
  using namespace paperfold;
  static const std::vector<Suite> table = {
      {"thm1", 0, false, [](const SuiteContext& c) { return cfseries::verify_thm1(c.order); }},
      {"lemma5", 4, false, [](const SuiteContext& c) { return cfseries::verify_lemma5(static_cast<int>(c.size)); }},
      {"thm2", 256, false, [](const SuiteContext& c) { return gf2sign::verify_thm2(c.size); }},
      {"thm3", 256, false, [](const SuiteContext& c) { return gf2sign::verify_thm3(c.size); }},
      {"thm4", 48, false, [](const SuiteContext& c) { return cfseries::verify_thm4(c.size); }},
      {"thm5", 256, false, [](const SuiteContext& c) { return gf2sign::verify_thm5(c.size); }},
      {"mdl", 256, false, [](const SuiteContext& c) { return gf2sign::verify_prop_mdl(c.size); }},
      {"ml-lm", 256, false, [](const SuiteContext& c) { return gf2sign::verify_prop_ml_lm(c.size); }},
      {"babab", 256, false, [](const SuiteContext& c) { return gf2sign::verify_babab(c.size); }},
      {"eps", 64, false,
       [](const SuiteContext& c) {
         std::mt19937_64 rng(c.seed);
         VerifyReport out{"eps", c.size};
         for (std::size_t draw = 0; draw < kEpsDraws; ++draw)
           out.merge(gf2sign::verify_eps(gf2sign::random_eps(rng, c.size), c.size));
         return out;
       }},
      {"catalan-lu", 48, false, [](const SuiteContext& c) { return catalanz::verify_catalan_lu(c.size); }},
      {"exp-products", 48, false, [](const SuiteContext& c) { return catalanz::verify_exp_products(c.size); }},
      {"log-conjecture", 48, true, [](const SuiteContext& c) { return catalanz::check_log_conjecture(c.size); }},
      {"catalan-gf", 0, false, [](const SuiteContext& c) { return catalanz::verify_catalan_gf_mod2(c.order); }},
      {"bridge", 64, false, [](const SuiteContext& c) { return catalanz::verify_bridge(c.size); }},
      {"dets", 32, false, [](const SuiteContext& c) { return cfseries::verify_det_identities(c.size); }},
      {"orth-polys", 64, false, [](const SuiteContext& c) { return cfseries::verify_orth_polys(c.size); }},
      {"shift-remark", 32, false, [](const SuiteContext& c) { return cfseries::verify_shift_remark(c.size); }},
      {"unique-search", 8, false, [](const SuiteContext& c) { return cfseries::verify_uniqueness(c.size); }},
  };
  return table;
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& s : suites()) names.push_back(s.name);
  return names;
}

/// Aggregate of one `verify` invocation.
struct RunReport {
  std::string suite;
  std::size_t size = 0;
  std::optional<std::size_t> order;
  std::optional<std::uint64_t> seed;
  bool pass = true;
  std::vector<Mismatch> failures;
  std::int64_t elapsed_ms = 0;
  std::vector<VerifyReport> suites;  // per-suite results for `all`
};

inline void to_json(json& j, const RunReport& r) {
  j = json{{"suite", r.suite}, {"size", r.size}};
  if (r.order) j["order"] = *r.order;
  if (r.seed) j["seed"] = *r.seed;
  j["pass"] = r.pass;
  j["failures"] = r.failures;
  j["elapsed_ms"] = r.elapsed_ms;
  if (!r.suites.empty()) j["suites"] = r.suites;
}

inline void from_json(const json& j, RunReport& r) {
  j.at("suite").get_to(r.suite);
  j.at("size").get_to(r.size);
  r.order = j.contains("order") ? std::optional<std::size_t>(j.at("order").get<std::size_t>()) : std::nullopt;
  r.seed = j.contains("seed") ? std::optional<std::uint64_t>(j.at("seed").get<std::uint64_t>()) : std::nullopt;
  j.at("pass").get_to(r.pass);
  r.failures = j.at("failures").get<std::vector<Mismatch>>();
  j.at("elapsed_ms").get_to(r.elapsed_ms);
  r.suites = j.contains("suites") ? j.at("suites").get<std::vector<VerifyReport>>() : std::vector<VerifyReport>{};
}

struct VerifyOptions {
  std::string suite = "all";
  std::optional<std::size_t> size;
  std::size_t order = 512;
  std::uint64_t seed = 1;
  bool strict = false;
  bool timing = true;
};

/// Runs one suite, or every suite with sizes capped at their defaults.
/// Conjecture failures count only with `strict`.
inline RunReport verify(const VerifyOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  RunReport out;
  out.suite = opt.suite;
  const bool all = opt.suite == "all";
  out.size = opt.size.value_or(256);

  bool found = false;
  for (const auto& s : suites()) {
    if (!all && s.name != opt.suite) continue;
    found = true;
    SuiteContext ctx;
    ctx.order = opt.order;
    ctx.seed = opt.seed;
    if (all)
      ctx.size = std::max<std::size_t>(1, std::min(out.size, s.default_size));
    else
      ctx.size = opt.size.value_or(s.default_size);
    VerifyReport r = s.run(ctx);
    r.conjecture = s.conjecture;
    if (s.default_size == 0) r.order = opt.order;
    if (!all) out.size = r.size;
    if (!s.conjecture || opt.strict) out.failures.insert(out.failures.end(), r.failures.begin(), r.failures.end());
    if (s.default_size == 0) out.order = opt.order;
    if (s.name == "eps") out.seed = opt.seed;
    out.suites.push_back(std::move(r));
  }
  if (!found) throw error(errc::invalid_argument, "unknown suite " + opt.suite);
  out.pass = out.failures.empty();
  if (!all) out.suites.clear();
  if (opt.timing)
    out.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

enum class Format { plain, csv, json };

inline std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

template <class T>
std::vector<std::string> to_strings(const std::vector<T>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(entry_string(x));
  return out;
}

/// Lower triangle, one row per line, right-aligned to the widest entry.
inline void print_triangle(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::size_t width = 1;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) width = std::max(width, rows[i][j].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) out << (j ? " " : "") << std::setw(static_cast<int>(width)) << rows[i][j];
    out << '\n';
  }
}

template <class T>
std::vector<std::vector<std::string>> matrix_strings(const DenseMatrix<T>& m,
                                                     std::string (*render)(const T&) = nullptr) {
  std::vector<std::vector<std::string>> rows(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) rows[i].push_back(render ? render(m(i, j)) : entry_string(m(i, j)));
  return rows;
}

inline void print_grid(std::ostream& out, Format fmt, const std::vector<std::vector<std::string>>& rows) {
  if (fmt == Format::csv) {
    for (const auto& r : rows) out << join(r, ",") << '\n';
  } else {
    print_triangle(out, rows);
  }
}

inline std::string rational_plain(const mpq_class& q) { return q.get_str(); }
inline std::string rational_wire(const mpq_class& q) { return rational_string(q); }

inline std::string series_plain(const cfseries::TruncSeries& s) {
  std::string out;
  for (std::size_t k = 0; k < s.order(); ++k) {
    if (s[k] == 0) continue;
    const bool neg = s[k] < 0;
    const mpq_class mag = neg ? mpq_class(-s[k]) : s[k];
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
    if (mono.empty())
      out += mag.get_str();
    else
      out += (mag == 1 ? "" : mag.get_str() + "*") + mono;
  }
  return (out.empty() ? "0" : out) + " + O(x^" + std::to_string(s.order()) + ")";
}

// ---------------------------------------------------------------------------
// Subcommands

inline const std::map<std::string, seq::Kind>& seq_kinds() {
  static const std::map<std::string, seq::Kind> m = {
      {"s", seq::Kind::S},   {"stilde", seq::Kind::STILDE}, {"ttilde", seq::Kind::TTILDE},       {"mu", seq::Kind::MU},
      {"d", seq::Kind::D},   {"b0", seq::Kind::B0},         {"example1", seq::Kind::EXAMPLE1},
  };
  return m;
}

inline const std::vector<std::string>& matrix_kinds() {
  static const std::vector<std::string> k = {"L",  "M",  "Ltilde",  "Mtilde",  "Ltilde0",
                                             "Mtilde0", "LZ", "MZ", "LtildeZ", "MtildeZ"};
  return k;
}

inline const std::map<std::string, cfseries::MomentSource>& hankel_sources() {
  static const std::map<std::string, cfseries::MomentSource> m = {
      {"mu", cfseries::MomentSource::MU},
      {"mu-shift", cfseries::MomentSource::MU_SHIFT},
      {"catalan", cfseries::MomentSource::CATALAN},
      {"catalan-shift", cfseries::MomentSource::CATALAN_SHIFT},
  };
  return m;
}

inline constexpr std::size_t kMaxSeqCount = std::size_t{1} << 20;

inline int cmd_seq(std::ostream& out, Format fmt, const std::string& kind_name, std::size_t count) {
  paperfold::detail::require_size(count, 1, kMaxSeqCount, "count");
  const seq::Kind kind = seq_kinds().at(kind_name);
  const auto values = seq::SignSequence(kind).prefix(count);
  if (fmt == Format::json) {
    out << json{{"kind", kind_name}, {"first_index", seq::first_index(kind)}, {"values", values}}.dump() << '\n';
  } else {
    out << join(to_strings(values), fmt == Format::csv ? "," : " ") << '\n';
  }
  return kOk;
}

inline int cmd_word(std::ostream& out, Format fmt, std::optional<int> level, std::optional<std::uint64_t> index) {
  if (level) {
    std::vector<std::string> letters;
    for (const auto& l : seq::fold_word(*level)) letters.push_back(seq::to_string(l));
    if (fmt == Format::json)
      out << json{{"level", *level}, {"letters", letters}}.dump() << '\n';
    else
      out << join(letters, fmt == Format::csv ? "," : " ") << '\n';
  } else {
    const std::string letter = seq::to_string(seq::fold_stream(*index));
    if (fmt == Format::json)
      out << json{{"index", *index}, {"letter", letter}}.dump() << '\n';
    else
      out << letter << '\n';
  }
  return kOk;
}

inline int cmd_matrix(std::ostream& out, Format fmt, const std::string& kind, std::size_t n) {
  std::vector<std::vector<std::string>> rows;
  static const std::map<std::string, gf2sign::TriKind> small = {
      {"L", gf2sign::TriKind::L},           {"M", gf2sign::TriKind::M},
      {"Ltilde", gf2sign::TriKind::LTILDE}, {"Mtilde", gf2sign::TriKind::MTILDE},
      {"Ltilde0", gf2sign::TriKind::LTILDE0}, {"Mtilde0", gf2sign::TriKind::MTILDE0},
  };
  static const std::map<std::string, catalanz::CatalanKind> big = {
      {"LZ", catalanz::CatalanKind::LZ},
      {"MZ", catalanz::CatalanKind::MZ},
      {"LtildeZ", catalanz::CatalanKind::LTILDEZ},
      {"MtildeZ", catalanz::CatalanKind::MTILDEZ},
  };
  json entries = json::array();
  if (auto it = small.find(kind); it != small.end()) {
    paperfold::detail::require_size(n, 1, gf2sign::kMaxSize, "matrix size");
    const auto m = gf2sign::build_tri(it->second, n);
    rows = matrix_strings(m);
    for (std::size_t i = 0; i < n; ++i) {
      json r = json::array();
      for (std::size_t j = 0; j < n; ++j) r.push_back(static_cast<int>(m(i, j)));
      entries.push_back(std::move(r));
    }
  } else {
    rows = matrix_strings(catalanz::build_catalan_matrix(big.at(kind), n));
    for (const auto& r : rows) entries.push_back(r);
  }
  if (fmt == Format::json)
    out << json{{"kind", kind}, {"size", n}, {"rows", entries}}.dump() << '\n';
  else
    print_grid(out, fmt, rows);
  return kOk;
}

inline int cmd_hankel(std::ostream& out, Format fmt, const std::string& source, std::size_t n) {
  const auto lu = cfseries::hankel_lu_rational(cfseries::moments(hankel_sources().at(source)), n);
  if (fmt == Format::json) {
    json l = json::array();
    for (const auto& r : matrix_strings(lu.l, &rational_wire)) l.push_back(r);
    std::vector<std::string> d, minors;
    for (const auto& v : lu.d) d.push_back(rational_wire(v));
    for (const auto& v : lu.minors) minors.push_back(rational_wire(v));
    out << json{{"source", source}, {"size", n}, {"L", l}, {"D", d}, {"minors", minors}}.dump() << '\n';
  } else if (fmt == Format::csv) {
    const auto rows = matrix_strings(lu.l, &rational_plain);
    for (std::size_t i = 0; i < n; ++i) out << i << ',' << rational_plain(lu.d[i]) << ',' << join(rows[i], ",") << '\n';
  } else {
    out << "L\n";
    print_triangle(out, matrix_strings(lu.l, &rational_plain));
    std::vector<std::string> d;
    for (const auto& v : lu.d) d.push_back(rational_plain(v));
    out << "D\n" << join(d, " ") << '\n';
  }
  return kOk;
}

inline int cmd_cf(std::ostream& out, Format fmt, int example, std::size_t order) {
  const auto limit = cfseries::cf_limit(cfseries::example_stream(example), order);
  if (fmt == Format::json) {
    out << json{{"example", example}, {"order", order}, {"coeffs", limit.to_strings()}}.dump() << '\n';
  } else if (fmt == Format::csv) {
    for (std::size_t k = 0; k < order; ++k) out << k << ',' << rational_string(limit[k]) << '\n';
  } else {
    out << series_plain(limit) << '\n';
  }
  return kOk;
}

inline int cmd_jacobi(std::ostream& out, Format fmt, std::size_t depth) {
  const auto jac = cfseries::stieltjes_extract(cfseries::moments(cfseries::MomentSource::MU), depth);
  if (fmt == Format::json) {
    std::vector<std::string> a, b;
    for (const auto& v : jac.a) a.push_back(rational_wire(v));
    for (const auto& v : jac.b) b.push_back(rational_wire(v));
    out << json{{"depth", depth}, {"a", a}, {"b", b}}.dump() << '\n';
  } else if (fmt == Format::csv) {
    for (std::size_t k = 0; k < depth; ++k)
      out << k << ',' << rational_plain(jac.a[k]) << ',' << (k ? rational_plain(jac.b[k - 1]) : "") << '\n';
  } else {
    std::vector<std::string> a, b;
    for (const auto& v : jac.a) a.push_back(rational_plain(v));
    for (const auto& v : jac.b) b.push_back(rational_plain(v));
    out << "a: " << join(a, " ") << "\nb: " << join(b, " ") << '\n';
  }
  return kOk;
}

inline int cmd_dets(std::ostream& out, Format fmt, std::size_t max) {
  const auto dets = cfseries::mu_hankel_dets(max);
  if (fmt == Format::json) {
    json arr = json::array();
    for (std::size_t n = 1; n <= max; ++n) arr.push_back(json{{"n", n}, {"det", dets[n].get_str()}});
    out << json{{"max", max}, {"dets", arr}}.dump() << '\n';
  } else {
    for (std::size_t n = 1; n <= max; ++n) out << n << (fmt == Format::csv ? "," : " ") << dets[n].get_str() << '\n';
  }
  return kOk;
}

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }), item.end());
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw CLI::ValidationError("--check", "not an integer: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

inline int cmd_unique_check(std::ostream& out, Format fmt, const std::vector<int>& c) {
  const auto r = cfseries::uniqueness_check(c);
  if (fmt == Format::json) {
    json j{{"input", c}, {"pass", r.pass}};
    if (r.pass)
      j["eps"] = r.eps;
    else
      j["which"] = r.which, j["n"] = r.n;
    out << j.dump() << '\n';
  } else if (r.pass) {
    out << "PASS eps=" << join(to_strings(std::vector<std::int64_t>(r.eps.begin(), r.eps.end())), ",") << '\n';
  } else {
    out << "FAIL " << r.which << " n=" << r.n << '\n';
  }
  return r.pass ? kOk : kFailed;
}

inline int cmd_unique_search(std::ostream& out, Format fmt, std::size_t length) {
  const auto survivors = cfseries::uniqueness_search(length);
  const auto report = cfseries::verify_uniqueness(length);
  if (fmt == Format::json) {
    out << json{{"length", length}, {"survivors", survivors}, {"pass", report.pass()}}.dump() << '\n';
  } else {
    for (const auto& c : survivors) out << join(to_strings(std::vector<std::int64_t>(c.begin(), c.end())), ",") << '\n';
  }
  return report.pass() ? kOk : kFailed;
}

inline int cmd_verify(std::ostream& out, Format fmt, const VerifyOptions& opt) {
  const RunReport r = verify(opt);
  if (fmt == Format::json) {
    out << json(r).dump() << '\n';
  } else if (fmt == Format::csv) {
    out << "suite,size,pass,conjecture,failures\n";
    if (r.suites.empty()) {
      out << r.suite << ',' << r.size << ',' << (r.pass ? "true" : "false") << ",false," << r.failures.size() << '\n';
    } else {
      for (const auto& s : r.suites)
        out << s.suite << ',' << s.size << ',' << (s.pass() ? "true" : "false") << ','
            << (s.conjecture ? "true" : "false") << ',' << s.failures.size() << '\n';
    }
  } else {
    auto line = [&](const std::string& name, std::size_t size, std::optional<std::size_t> order, bool pass, bool conj,
                    std::size_t nfail) {
      out << (pass ? "PASS " : "FAIL ") << name;
      if (order)
        out << " order=" << *order;
      else
        out << " size=" << size;
      out << (conj ? " (conjecture)" : "");
      if (!pass) out << " failures=" << nfail;
      out << '\n';
    };
    if (r.suites.empty()) {
      line(r.suite, r.size, r.order, r.pass, false, r.failures.size());
    } else {
      for (const auto& s : r.suites) line(s.suite, s.size, s.order, s.pass(), s.conjecture, s.failures.size());
    }
    constexpr std::size_t kShown = 20;
    for (std::size_t i = 0; i < r.failures.size() && i < kShown; ++i) {
      const auto& m = r.failures[i];
      out << "  " << (m.what.empty() ? "" : m.what + " ") << "(" << m.i << "," << m.j << "): expected " << m.expected
          << ", got " << m.got << '\n';
    }
    if (r.failures.size() > kShown) out << "  ... " << r.failures.size() - kShown << " more\n";
    out << (r.pass ? "PASS" : "FAIL") << " elapsed_ms=" << r.elapsed_ms << '\n';
  }
  return r.pass ? kOk : kFailed;
}

// ---------------------------------------------------------------------------
// Entry point

/// Parses `args` (without the program name) and runs one subcommand.
/// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 guard or
/// internal error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Paperfolding, Catalan numbers mod 2 and Hankel continued fractions", "paperfold"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "plain";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "csv", "json"}));

  std::vector<std::string> seq_names;
  for (const auto& [k, v] : seq_kinds()) seq_names.push_back(k);
  std::vector<std::string> sources;
  for (const auto& [k, v] : hankel_sources()) sources.push_back(k);

  std::string seq_kind;
  std::size_t count = 0;
  auto* seq_cmd = app.add_subcommand("seq", "Print a prefix of a sign sequence");
  seq_cmd->add_option("--kind", seq_kind)->required()->check(CLI::IsMember(seq_names));
  seq_cmd->add_option("--count", count)->required();

  std::optional<int> level;
  std::optional<std::uint64_t> index;
  auto* word_cmd = app.add_subcommand("word", "Print a folding word W_k or the letter w_n");
  auto* level_opt = word_cmd->add_option("--level", level);
  auto* index_opt = word_cmd->add_option("--index", index);
  level_opt->excludes(index_opt);
  word_cmd->require_option(1);

  std::string matrix_kind;
  std::size_t size = 0;
  auto* matrix_cmd = app.add_subcommand("matrix", "Print a triangular matrix");
  matrix_cmd->add_option("--kind", matrix_kind)->required()->check(CLI::IsMember(matrix_kinds()));
  matrix_cmd->add_option("--size", size)->required();

  std::string source;
  auto* hankel_cmd = app.add_subcommand("hankel", "Print the LU factors of a Hankel matrix");
  hankel_cmd->add_option("--source", source)->required()->check(CLI::IsMember(sources));
  hankel_cmd->add_option("--size", size)->required();

  int example = 1;
  std::size_t order = 512;
  auto* cf_cmd = app.add_subcommand("cf", "Expand the folded continued fraction of an example");
  cf_cmd->add_option("--example", example)->required()->check(CLI::IsMember({1, 2, 3}));
  cf_cmd->add_option("--order", order)->required();

  std::size_t depth = 0;
  auto* jacobi_cmd = app.add_subcommand("jacobi", "Print the Jacobi coefficients of the mu moments");
  jacobi_cmd->add_option("--depth", depth)->required();

  std::size_t max = 0;
  auto* dets_cmd = app.add_subcommand("dets", "Print det H(n) of the mu moments");
  dets_cmd->add_option("--max", max)->required();

  std::string check;
  std::size_t search = 0;
  auto* unique_cmd = app.add_subcommand("unique", "Check or search Hankel-determinant uniqueness");
  auto* check_opt = unique_cmd->add_option("--check", check);
  auto* search_opt = unique_cmd->add_option("--search", search);
  check_opt->excludes(search_opt);
  unique_cmd->require_option(1);

  VerifyOptions vopt;
  std::size_t vsize = 0;
  bool no_timing = false;
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
  verify_cmd->add_option("--suite", vopt.suite)->required()->check(CLI::IsMember(suite_choices));
  auto* vsize_opt = verify_cmd->add_option("--size", vsize);
  verify_cmd->add_option("--order", vopt.order);
  verify_cmd->add_option("--seed", vopt.seed);
  verify_cmd->add_flag("--strict", vopt.strict);
  verify_cmd->add_flag("--no-timing", no_timing, "Report elapsed_ms as 0");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kUsage;
  }

  const Format fmt = format == "csv" ? Format::csv : format == "json" ? Format::json : Format::plain;
  try {
    if (seq_cmd->parsed()) return cmd_seq(out, fmt, seq_kind, count);
    if (word_cmd->parsed()) return cmd_word(out, fmt, level, index);
    if (matrix_cmd->parsed()) return cmd_matrix(out, fmt, matrix_kind, size);
    if (hankel_cmd->parsed()) return cmd_hankel(out, fmt, source, size);
    if (cf_cmd->parsed()) return cmd_cf(out, fmt, example, order);
    if (jacobi_cmd->parsed()) return cmd_jacobi(out, fmt, depth);
    if (dets_cmd->parsed()) return cmd_dets(out, fmt, max);
    if (unique_cmd->parsed()) {
      if (*check_opt) return cmd_unique_check(out, fmt, parse_int_list(check));
      return cmd_unique_search(out, fmt, search);
    }
    if (verify_cmd->parsed()) {
      if (*vsize_opt) vopt.size = vsize;
      vopt.timing = !no_timing;
      return cmd_verify(out, fmt, vopt);
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const error& e) {
    err << e.what() << '\n';
    return kGuard;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kGuard;
  }
  err << app.help();
  return kUsage;
}

}  // namespace paperfold::cli
