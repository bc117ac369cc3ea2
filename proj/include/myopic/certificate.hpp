#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "myopic/set_function.hpp"
#include "myopic/subset.hpp"

namespace myopic {

// Which indistinguishability regime a certificate (or LP) is built for:
//   fixed_q2    — prefix equalities, fixed-order games under q-type 2
//   fixed_q3    — subset equalities, fixed-order games under q-type 3
//   adaptive_q2 — all-pairs equalities, adaptive-order games under q-type 2
enum class Variant { fixed_q2, fixed_q3, adaptive_q2 };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::fixed_q2: return "fixed-q2";
    case Variant::fixed_q3: return "fixed-q3";
    case Variant::adaptive_q2: return "adaptive-q2";
  }
  return "?";
}

inline std::optional<Variant> variant_from_string(const std::string& s) {
  if (s == "fixed-q2") return Variant::fixed_q2;
  if (s == "fixed-q3") return Variant::fixed_q3;
  if (s == "adaptive-q2") return Variant::adaptive_q2;
  return std::nullopt;
}

class CertificateError : public std::runtime_error {
 public:
  explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

// A hard instance: a set function together with the paired items that an
// adversary plays. Round j <= k offers the pair (accept_items[j-1],
// reject_items[j-1]); the designated optimum carries the target value.
struct Certificate {
  SetFunction fn;
  std::vector<int> accept_items;  // a_1 .. a_k
  std::vector<int> reject_items;  // r_1 .. r_k
  Subset optimum;                 // the designated optimum set O
  int k = 0;
  Variant variant = Variant::fixed_q2;

  int n() const { return fn.n(); }

  void validate_shape() const {
    if (k < 0 || static_cast<int>(accept_items.size()) != k ||
        static_cast<int>(reject_items.size()) != k)
      throw CertificateError("certificate pairing must list k items per side");
    Subset a, r;
    for (int i : accept_items) a = a.with(i);
    for (int i : reject_items) r = r.with(i);
    if (a.size() != k || r.size() != k || a.intersects(r))
      throw CertificateError("certificate pairing must be disjoint and duplicate-free");
    if (!fn.ground().valid(optimum)) throw CertificateError("certificate optimum out of range");
  }
};

// File form: a '#' header block (variant, n, k, A, R, O) above the standard
// function-table CSV.
inline void write_certificate(const Certificate& cert, std::ostream& os) {
  os << "# variant: " << to_string(cert.variant) << '\n';
  os << "# n: " << cert.n() << '\n';
  os << "# k: " << cert.k << '\n';
  auto write_items = [&](const char* key, const std::vector<int>& items) {
    os << "# " << key << ':';
    for (int i : items) os << ' ' << cert.fn.ground().label(i);
    os << '\n';
  };
  write_items("A", cert.accept_items);
  write_items("R", cert.reject_items);
  write_items("O", cert.optimum.items());
  write_function_csv(cert.fn, os);
}

inline Certificate read_certificate(std::istream& is) {
  std::map<std::string, std::string> header;
  std::ostringstream body;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') {
      std::string rest = line.substr(1);
      auto colon = rest.find(':');
      if (colon != std::string::npos) {
        std::string key = rest.substr(0, colon);
        std::string value = rest.substr(colon + 1);
        auto trim = [](std::string& s) {
          while (!s.empty() && s.front() == ' ') s.erase(s.begin());
          while (!s.empty() && s.back() == ' ') s.pop_back();
        };
        trim(key);
        trim(value);
        header[key] = value;
      }
      continue;
    }
    body << line << '\n';
  }
  for (const char* key : {"variant", "n", "k", "A", "R", "O"})
    if (!header.count(key))
      throw CertificateError(std::string("certificate header misses key: ") + key);

  std::istringstream body_stream(body.str());
  SetFunction fn = read_function_csv(body_stream);

  Certificate cert{std::move(fn), {}, {}, Subset{}, 0, Variant::fixed_q2};
  auto variant = variant_from_string(header["variant"]);
  if (!variant) throw CertificateError("unknown certificate variant: " + header["variant"]);
  cert.variant = *variant;
  cert.k = std::stoi(header["k"]);
  if (std::stoi(header["n"]) != cert.n())
    throw CertificateError("certificate header n disagrees with the table size");

  auto parse_items = [&](const std::string& value) {
    std::vector<int> items;
    std::istringstream ss(value);
    std::string token;
    while (ss >> token) {
      int idx = cert.fn.ground().index_of(token);
      if (idx < 0) throw CertificateError("unknown item label in certificate header: " + token);
      items.push_back(idx);
    }
    return items;
  };
  cert.accept_items = parse_items(header["A"]);
  cert.reject_items = parse_items(header["R"]);
  for (int i : parse_items(header["O"])) cert.optimum = cert.optimum.with(i);
  cert.validate_shape();
  return cert;
}

}  // namespace myopic
