#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "paperfold/matrix.hpp"

namespace paperfold {

/// One violated entry of an identity. `what` names the identity when a suite
/// checks several; (i, j) is the matrix position or, for scalar checks, the
/// index in `i` and 0 in `j`.
struct Mismatch {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string expected;
  std::string got;
  std::string what;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct VerifyReport {
  std::string suite;
  std::size_t size = 0;
  std::optional<std::size_t> order;
  bool conjecture = false;
  std::vector<Mismatch> failures;

  VerifyReport() = default;
  VerifyReport(std::string suite_name, std::size_t n) : suite(std::move(suite_name)), size(n) {}

  bool pass() const noexcept { return failures.empty(); }

  void fail(std::string what, std::size_t i, std::size_t j, std::string expected, std::string got) {
    failures.push_back({i, j, std::move(expected), std::move(got), std::move(what)});
  }

  /// Append every entry where `got` differs from `expected`, row-major, so
  /// failure lists are sorted by (i, j) within one identity.
  template <class A, class B>
  void compare(const std::string& what, const DenseMatrix<A>& expected, const DenseMatrix<B>& got) {
    if (expected.size() != got.size()) {
      fail(what + " (size)", 0, 0, std::to_string(expected.size()), std::to_string(got.size()));
      return;
    }
    for (std::size_t i = 0; i < got.size(); ++i)
      for (std::size_t j = 0; j < got.size(); ++j)
        if (!(expected(i, j) == got(i, j)))
          fail(what, i, j, entry_string(expected(i, j)), entry_string(got(i, j)));
  }

  void check(const std::string& what, bool ok, std::size_t i = 0, std::string expected = "true",
             std::string got = "false") {
    if (!ok) fail(what, i, 0, std::move(expected), std::move(got));
  }

  void merge(const VerifyReport& other) {
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }
};

inline void to_json(nlohmann::ordered_json& j, const Mismatch& m) {
  j = nlohmann::ordered_json{{"i", m.i}, {"j", m.j}, {"expected", m.expected}, {"got", m.got}};
  if (!m.what.empty()) j["what"] = m.what;
}

inline void from_json(const nlohmann::ordered_json& j, Mismatch& m) {
  j.at("i").get_to(m.i);
  j.at("j").get_to(m.j);
  j.at("expected").get_to(m.expected);
  j.at("got").get_to(m.got);
  m.what = j.value("what", std::string{});
}

inline void to_json(nlohmann::ordered_json& j, const VerifyReport& r) {
  j = nlohmann::ordered_json{{"suite", r.suite}, {"size", r.size}};
  if (r.order) j["order"] = *r.order;
  j["pass"] = r.pass();
  if (r.conjecture) j["conjecture"] = true;
  j["failures"] = r.failures;
}

inline void from_json(const nlohmann::ordered_json& j, VerifyReport& r) {
  j.at("suite").get_to(r.suite);
  j.at("size").get_to(r.size);
  if (j.contains("order")) r.order = j.at("order").get<std::size_t>();
  r.conjecture = j.value("conjecture", false);
  r.failures = j.at("failures").get<std::vector<Mismatch>>();
}

}  // namespace paperfold
