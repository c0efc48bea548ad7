#pragma once

// FunctionExpr: an immutable expression tree describing a family of entire
// functions Phi_n(z), indexed by n >= 0.  Node kinds: z, const, seq (an
// n-indexed scalar), add, mul, pow (integer exponent, affine in n), exp
// (exp(a*z) with a affine in n).  By convention every family evaluates to 1
// at n = 0: the index-0 operator is the identity.

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "entireops/common.hpp"
#include "entireops/taylor_poly.hpp"

namespace entireops {

using json = nlohmann::ordered_json;

// exponent(n) = coef_n * n + offset; must come out >= 0 wherever used.
struct IntAffine {
  long long coef_n = 0;
  long long offset = 0;

  long long at(int n) const { return coef_n * static_cast<long long>(n) + offset; }
  friend bool operator==(const IntAffine&, const IntAffine&) = default;
};

// scale(n) = coef_n * n + offset, complex valued.
struct ScalarAffine {
  cplx coef_n{0.0, 0.0};
  cplx offset{0.0, 0.0};

  cplx at(int n) const { return coef_n * static_cast<double>(n) + offset; }
  friend bool operator==(const ScalarAffine&, const ScalarAffine&) = default;
};

enum class SeqTag { Constant, Geometric, LogShift, Power, List };

// A scalar sequence c_n.  c_0 is defined to be 1 for every tag: index 0
// always denotes the identity operator, whose scalar weight is 1.
struct SeqSpec {
  SeqTag tag = SeqTag::Constant;
  cplx value{1.0, 0.0};      // Constant: c          Geometric: ratio r (r^n)
  double exponent = 1.0;     // Power: p in n^p
  std::vector<cplx> items;   // List: c_n = items[n-1] for n >= 1

  static SeqSpec constant(cplx c) { return {SeqTag::Constant, c, 1.0, {}}; }
  static SeqSpec geometric(cplx r) { return {SeqTag::Geometric, r, 1.0, {}}; }
  static SeqSpec log_shift() { return {SeqTag::LogShift, {}, 1.0, {}}; }
  static SeqSpec power(double p) { return {SeqTag::Power, {}, p, {}}; }
  static SeqSpec list(std::vector<cplx> v) { return {SeqTag::List, {}, 1.0, std::move(v)}; }

  cplx at(int n) const {
    if (n < 0) throw std::invalid_argument("sequence index must be >= 0");
    if (n == 0) return {1.0, 0.0};
    switch (tag) {
      case SeqTag::Constant: return value;
      case SeqTag::Geometric: {
        cplx acc{1.0, 0.0};
        cplx base = value;
        long long e = n;
        while (e > 0) {  // binary powering keeps r^n sharp for large n
          if (e & 1) acc *= base;
          base *= base;
          e >>= 1;
        }
        return acc;
      }
      case SeqTag::LogShift: return {std::log(static_cast<double>(n) + 1.0), 0.0};
      case SeqTag::Power: return {std::pow(static_cast<double>(n), exponent), 0.0};
      case SeqTag::List:
        if (static_cast<std::size_t>(n) > items.size())
          throw SeqExhaustedError("sequence list has " + std::to_string(items.size()) +
                                  " items, index " + std::to_string(n) + " requested");
        return items[static_cast<std::size_t>(n) - 1];
    }
    return {1.0, 0.0};
  }

  friend bool operator==(const SeqSpec&, const SeqSpec&) = default;
};

class FunctionExpr {
 public:
  enum class Kind { Z, Const, Seq, Add, Mul, Pow, Exp };

  struct Node {
    Kind kind = Kind::Z;
    cplx value{0.0, 0.0};                    // Const
    SeqSpec seq;                             // Seq
    std::shared_ptr<const Node> left, right; // Add/Mul; Pow uses left as base
    IntAffine exponent;                      // Pow
    ScalarAffine scale;                      // Exp
  };

  FunctionExpr() : root_(std::make_shared<Node>()) {}

  static FunctionExpr z() { return FunctionExpr(Node{Kind::Z}); }
  static FunctionExpr constant(cplx c) {
    Node n{Kind::Const};
    n.value = c;
    return FunctionExpr(std::move(n));
  }
  static FunctionExpr seq(SeqSpec s) {
    Node n{Kind::Seq};
    n.seq = std::move(s);
    return FunctionExpr(std::move(n));
  }
  static FunctionExpr add(const FunctionExpr& l, const FunctionExpr& r) {
    Node n{Kind::Add};
    n.left = l.root_;
    n.right = r.root_;
    return FunctionExpr(std::move(n));
  }
  static FunctionExpr mul(const FunctionExpr& l, const FunctionExpr& r) {
    Node n{Kind::Mul};
    n.left = l.root_;
    n.right = r.root_;
    return FunctionExpr(std::move(n));
  }
  static FunctionExpr pow(const FunctionExpr& base, IntAffine e) {
    Node n{Kind::Pow};
    n.left = base.root_;
    n.exponent = e;
    return FunctionExpr(std::move(n));
  }
  static FunctionExpr exp(ScalarAffine scale) {
    Node n{Kind::Exp};
    n.scale = scale;
    return FunctionExpr(std::move(n));
  }

  const Node& root() const { return *root_; }
  std::shared_ptr<const Node> root_ptr() const { return root_; }

  bool contains_exp() const { return contains_exp(*root_); }
  bool is_polynomial() const { return !contains_exp(); }

  // Degree in z at index n; only meaningful for polynomial expressions.
  long long poly_degree(int n) const { return poly_degree(*root_, n); }

  json to_json() const { return node_to_json(*root_); }
  static FunctionExpr from_json(const json& doc) { return FunctionExpr(parse_node(doc)); }

  friend bool operator==(const FunctionExpr& a, const FunctionExpr& b) {
    return node_equal(*a.root_, *b.root_);
  }

 private:
  explicit FunctionExpr(Node n) : root_(std::make_shared<Node>(std::move(n))) {}

  static bool contains_exp(const Node& n) {
    if (n.kind == Kind::Exp) return true;
    if (n.left && contains_exp(*n.left)) return true;
    if (n.right && contains_exp(*n.right)) return true;
    return false;
  }

  static long long poly_degree(const Node& n, int idx) {
    switch (n.kind) {
      case Kind::Z: return 1;
      case Kind::Const: return 0;
      case Kind::Seq: return 0;
      case Kind::Add: return std::max(poly_degree(*n.left, idx), poly_degree(*n.right, idx));
      case Kind::Mul: return poly_degree(*n.left, idx) + poly_degree(*n.right, idx);
      case Kind::Pow: {
        long long e = n.exponent.at(idx);
        if (e < 0) throw std::invalid_argument("negative exponent at index " + std::to_string(idx));
        return e * poly_degree(*n.left, idx);
      }
      case Kind::Exp: throw std::invalid_argument("exp node has no polynomial degree");
    }
    return 0;
  }

  static bool node_equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::Z: return true;
      case Kind::Const: return a.value == b.value;
      case Kind::Seq: return a.seq == b.seq;
      case Kind::Add:
      case Kind::Mul:
        return node_equal(*a.left, *b.left) && node_equal(*a.right, *b.right);
      case Kind::Pow:
        return a.exponent == b.exponent && node_equal(*a.left, *b.left);
      case Kind::Exp: return a.scale == b.scale;
    }
    return false;
  }

  // ---- JSON ----

  static json scalar_to_json(cplx v) {
    if (v.imag() == 0.0) return json(v.real());
    return json::array({v.real(), v.imag()});
  }

  static cplx scalar_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
      return {j[0].get<double>(), j[1].get<double>()};
    throw ValidationError({where + ": expected a number or [re, im] pair"});
  }

  static json intaffine_to_json(const IntAffine& e) {
    if (e.coef_n == 0) return json(e.offset);
    json j;
    j["coef_n"] = e.coef_n;
    j["offset"] = e.offset;
    return j;
  }

  static IntAffine intaffine_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return {0, j.get<long long>()};
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "coef_n" && it.key() != "offset")
          throw ValidationError({where + ": unknown key '" + it.key() + "'"});
      IntAffine e;
      if (j.contains("coef_n")) {
        if (!j["coef_n"].is_number_integer())
          throw ValidationError({where + ".coef_n: expected an integer"});
        e.coef_n = j["coef_n"].get<long long>();
      }
      if (j.contains("offset")) {
        if (!j["offset"].is_number_integer())
          throw ValidationError({where + ".offset: expected an integer"});
        e.offset = j["offset"].get<long long>();
      }
      return e;
    }
    throw ValidationError({where + ": expected an integer or {coef_n, offset}"});
  }

  static json affine_to_json(const ScalarAffine& a) {
    if (a.coef_n == cplx{0.0, 0.0}) return scalar_to_json(a.offset);
    json j;
    j["coef_n"] = scalar_to_json(a.coef_n);
    j["offset"] = scalar_to_json(a.offset);
    return j;
  }

  static ScalarAffine affine_from_json(const json& j, const std::string& where) {
    if (j.is_number() || (j.is_array() && j.size() == 2))
      return {cplx{0.0, 0.0}, scalar_from_json(j, where)};
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "coef_n" && it.key() != "offset")
          throw ValidationError({where + ": unknown key '" + it.key() + "'"});
      ScalarAffine a;
      if (j.contains("coef_n")) a.coef_n = scalar_from_json(j["coef_n"], where + ".coef_n");
      if (j.contains("offset")) a.offset = scalar_from_json(j["offset"], where + ".offset");
      return a;
    }
    throw ValidationError({where + ": expected a scalar or {coef_n, offset}"});
  }

  static json seq_to_json(const SeqSpec& s) {
    json j;
    switch (s.tag) {
      case SeqTag::Constant:
        j["tag"] = "constant";
        j["value"] = scalar_to_json(s.value);
        break;
      case SeqTag::Geometric:
        j["tag"] = "geometric";
        j["ratio"] = scalar_to_json(s.value);
        break;
      case SeqTag::LogShift:
        j["tag"] = "log";
        break;
      case SeqTag::Power:
        j["tag"] = "power";
        j["exponent"] = s.exponent;
        break;
      case SeqTag::List: {
        j["tag"] = "list";
        json arr = json::array();
        for (const auto& v : s.items) arr.push_back(scalar_to_json(v));
        j["items"] = std::move(arr);
        break;
      }
    }
    return j;
  }

  static void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                             const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool ok = false;
      for (const char* a : allowed)
        if (it.key() == a) { ok = true; break; }
      if (!ok) throw ValidationError({where + ": unknown key '" + it.key() + "'"});
    }
  }

  static void require(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key))
      throw ValidationError({where + ": missing required key '" + std::string(key) + "'"});
  }

 public:
  static SeqSpec seq_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw ValidationError({where + ": expected an object"});
    require(j, "tag", where);
    const std::string tag = j["tag"].get<std::string>();
    if (tag == "constant") {
      reject_unknown(j, {"tag", "value"}, where);
      require(j, "value", where);
      return SeqSpec::constant(scalar_from_json(j["value"], where + ".value"));
    }
    if (tag == "geometric") {
      reject_unknown(j, {"tag", "ratio"}, where);
      require(j, "ratio", where);
      return SeqSpec::geometric(scalar_from_json(j["ratio"], where + ".ratio"));
    }
    if (tag == "log") {
      reject_unknown(j, {"tag"}, where);
      return SeqSpec::log_shift();
    }
    if (tag == "power") {
      reject_unknown(j, {"tag", "exponent"}, where);
      require(j, "exponent", where);
      if (!j["exponent"].is_number())
        throw ValidationError({where + ".exponent: expected a number"});
      return SeqSpec::power(j["exponent"].get<double>());
    }
    if (tag == "list") {
      reject_unknown(j, {"tag", "items"}, where);
      require(j, "items", where);
      if (!j["items"].is_array())
        throw ValidationError({where + ".items: expected an array"});
      std::vector<cplx> items;
      std::size_t i = 0;
      for (const auto& v : j["items"])
        items.push_back(scalar_from_json(v, where + ".items[" + std::to_string(i++) + "]"));
      if (items.empty())
        throw ValidationError({where + ".items: need at least one entry"});
      return SeqSpec::list(std::move(items));
    }
    throw ValidationError({where + ".tag: unknown sequence tag '" + tag + "'"});
  }

  static json seq_spec_to_json(const SeqSpec& s) { return seq_to_json(s); }

 private:
  static json node_to_json(const Node& n) {
    json j;
    switch (n.kind) {
      case Kind::Z:
        j["kind"] = "z";
        break;
      case Kind::Const:
        j["kind"] = "const";
        j["value"] = scalar_to_json(n.value);
        break;
      case Kind::Seq:
        j["kind"] = "seq";
        j["seq"] = seq_to_json(n.seq);
        break;
      case Kind::Add:
        j["kind"] = "add";
        j["left"] = node_to_json(*n.left);
        j["right"] = node_to_json(*n.right);
        break;
      case Kind::Mul:
        j["kind"] = "mul";
        j["left"] = node_to_json(*n.left);
        j["right"] = node_to_json(*n.right);
        break;
      case Kind::Pow:
        j["kind"] = "pow";
        j["base"] = node_to_json(*n.left);
        j["exponent"] = intaffine_to_json(n.exponent);
        break;
      case Kind::Exp:
        j["kind"] = "exp";
        j["scale"] = affine_to_json(n.scale);
        break;
    }
    return j;
  }

  static Node parse_node(const json& j, const std::string& where = "expr") {
    if (!j.is_object()) throw ValidationError({where + ": expected an object"});
    require(j, "kind", where);
    const std::string kind = j["kind"].get<std::string>();
    Node n;
    if (kind == "z") {
      reject_unknown(j, {"kind"}, where);
      n.kind = Kind::Z;
    } else if (kind == "const") {
      reject_unknown(j, {"kind", "value"}, where);
      require(j, "value", where);
      n.kind = Kind::Const;
      n.value = scalar_from_json(j["value"], where + ".value");
    } else if (kind == "seq") {
      reject_unknown(j, {"kind", "seq"}, where);
      require(j, "seq", where);
      n.kind = Kind::Seq;
      n.seq = seq_from_json(j["seq"], where + ".seq");
    } else if (kind == "add" || kind == "mul") {
      reject_unknown(j, {"kind", "left", "right"}, where);
      require(j, "left", where);
      require(j, "right", where);
      n.kind = (kind == "add") ? Kind::Add : Kind::Mul;
      n.left = std::make_shared<Node>(parse_node(j["left"], where + ".left"));
      n.right = std::make_shared<Node>(parse_node(j["right"], where + ".right"));
    } else if (kind == "pow") {
      reject_unknown(j, {"kind", "base", "exponent"}, where);
      require(j, "base", where);
      require(j, "exponent", where);
      n.kind = Kind::Pow;
      n.left = std::make_shared<Node>(parse_node(j["base"], where + ".base"));
      n.exponent = intaffine_from_json(j["exponent"], where + ".exponent");
    } else if (kind == "exp") {
      reject_unknown(j, {"kind", "scale"}, where);
      require(j, "scale", where);
      n.kind = Kind::Exp;
      n.scale = affine_from_json(j["scale"], where + ".scale");
    } else {
      throw ValidationError({where + ".kind: unknown node kind '" + kind + "'"});
    }
    return n;
  }

  std::shared_ptr<const Node> root_;
};

namespace detail {

inline cplx powi(cplx base, long long e) {
  cplx acc{1.0, 0.0};
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline cplx eval_node(const FunctionExpr::Node& n, int idx, cplx z) {
  using Kind = FunctionExpr::Kind;
  switch (n.kind) {
    case Kind::Z: return z;
    case Kind::Const: return n.value;
    case Kind::Seq: return n.seq.at(idx);
    case Kind::Add: return eval_node(*n.left, idx, z) + eval_node(*n.right, idx, z);
    case Kind::Mul: return eval_node(*n.left, idx, z) * eval_node(*n.right, idx, z);
    case Kind::Pow: {
      long long e = n.exponent.at(idx);
      if (e < 0)
        throw std::invalid_argument("pow exponent " + std::to_string(e) +
                                    " is negative at index " + std::to_string(idx));
      return powi(eval_node(*n.left, idx, z), e);
    }
    case Kind::Exp: return std::exp(n.scale.at(idx) * z);
  }
  return {0.0, 0.0};
}

inline LogComplex eval_node_log(const FunctionExpr::Node& n, int idx, cplx z) {
  using Kind = FunctionExpr::Kind;
  switch (n.kind) {
    case Kind::Z: return LogComplex::from(z);
    case Kind::Const: return LogComplex::from(n.value);
    case Kind::Seq: return LogComplex::from(n.seq.at(idx));
    case Kind::Add:
      return log_add(eval_node_log(*n.left, idx, z), eval_node_log(*n.right, idx, z));
    case Kind::Mul:
      return log_mul(eval_node_log(*n.left, idx, z), eval_node_log(*n.right, idx, z));
    case Kind::Pow: {
      long long e = n.exponent.at(idx);
      if (e < 0)
        throw std::invalid_argument("pow exponent " + std::to_string(e) +
                                    " is negative at index " + std::to_string(idx));
      return log_pow(eval_node_log(*n.left, idx, z), e);
    }
    case Kind::Exp: {
      cplx w = n.scale.at(idx) * z;
      LogComplex r;
      r.lmag = w.real();
      r.phase = std::remainder(w.imag(), kTwoPi);
      r.add_headroom = 0.0;
      return r;
    }
  }
  return {};
}

}  // namespace detail

// Log-magnitude/phase evaluation; exact zeros come back with lmag = -inf.
// add_headroom on the result reports the worst cancellation at any addition.
inline LogComplex evaluate_log(const FunctionExpr& f, int n, cplx z) {
  if (n < 0) throw std::invalid_argument("family index must be >= 0");
  if (n == 0) return LogComplex::one();
  return detail::eval_node_log(f.root(), n, z);
}

// Plain evaluation.  n = 0 returns 1 for every expression (identity index).
// Overflow in the direct pass falls back to the scaled evaluator; if the
// value itself exceeds double range that is an OverflowError.
inline cplx evaluate(const FunctionExpr& f, int n, cplx z) {
  if (n < 0) throw std::invalid_argument("family index must be >= 0");
  if (n == 0) return {1.0, 0.0};
  cplx v = detail::eval_node(f.root(), n, z);
  if (std::isfinite(v.real()) && std::isfinite(v.imag())) return v;
  return detail::eval_node_log(f.root(), n, z).to_complex();
}

// ---- Truncated Taylor expansion --------------------------------------------

namespace detail {

inline std::vector<cplx> taylor_node(const FunctionExpr::Node& n, int idx, int m);

inline std::vector<cplx> taylor_mul(const std::vector<cplx>& a,
                                    const std::vector<cplx>& b, int m) {
  std::vector<cplx> out(static_cast<std::size_t>(m) + 1, cplx{0.0, 0.0});
  for (int i = 0; i <= m && i < static_cast<int>(a.size()); ++i) {
    if (a[static_cast<std::size_t>(i)] == cplx{0.0, 0.0}) continue;
    const int jmax = std::min(m - i, static_cast<int>(b.size()) - 1);
    for (int j = 0; j <= jmax; ++j)
      out[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  }
  return out;
}

inline std::vector<cplx> taylor_node(const FunctionExpr::Node& n, int idx, int m) {
  using Kind = FunctionExpr::Kind;
  std::vector<cplx> out(static_cast<std::size_t>(m) + 1, cplx{0.0, 0.0});
  switch (n.kind) {
    case Kind::Z:
      if (m >= 1) out[1] = {1.0, 0.0};
      break;
    case Kind::Const:
      out[0] = n.value;
      break;
    case Kind::Seq:
      out[0] = n.seq.at(idx);
      break;
    case Kind::Add: {
      auto l = taylor_node(*n.left, idx, m);
      auto r = taylor_node(*n.right, idx, m);
      for (int k = 0; k <= m; ++k) out[static_cast<std::size_t>(k)] = l[static_cast<std::size_t>(k)] + r[static_cast<std::size_t>(k)];
      break;
    }
    case Kind::Mul:
      out = taylor_mul(taylor_node(*n.left, idx, m), taylor_node(*n.right, idx, m), m);
      break;
    case Kind::Pow: {
      long long e = n.exponent.at(idx);
      if (e < 0)
        throw std::invalid_argument("pow exponent " + std::to_string(e) +
                                    " is negative at index " + std::to_string(idx));
      auto base = taylor_node(*n.left, idx, m);
      out[0] = {1.0, 0.0};
      while (e > 0) {  // binary powering over truncated series
        if (e & 1) out = taylor_mul(out, base, m);
        if ((e >>= 1) > 0) base = taylor_mul(base, base, m);
      }
      break;
    }
    case Kind::Exp: {
      const cplx a = n.scale.at(idx);
      cplx term{1.0, 0.0};
      out[0] = term;
      for (int k = 1; k <= m; ++k) {
        term *= a / static_cast<double>(k);
        out[static_cast<std::size_t>(k)] = term;
      }
      break;
    }
  }
  return out;
}

// Least-squares geometric fit |c_k| ~ A q^k over the last quartile; the
// resulting tail estimate sum_{k>m} A q^k is conservative for entire
// functions because log|c_k| is concave there.
inline double geometric_tail_bound(const std::vector<cplx>& c) {
  const int m = static_cast<int>(c.size()) - 1;
  const int lo = (3 * m) / 4;
  std::vector<std::pair<double, double>> pts;
  for (int k = lo; k <= m; ++k) {
    double a = std::abs(c[static_cast<std::size_t>(k)]);
    if (a > 1e-300) pts.emplace_back(static_cast<double>(k), std::log(a));
  }
  if (pts.size() < 3) {
    // Window numerically zero: whatever tail exists is below representable
    // relevance; report the underflow floor rather than claiming exactness.
    double amax = 0.0;
    for (int k = lo; k <= m; ++k) amax = std::max(amax, std::abs(c[static_cast<std::size_t>(k)]));
    return amax < 1e-300 ? 1e-280 : std::numeric_limits<double>::infinity();
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double npts = static_cast<double>(pts.size());
  const double denom = npts * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  const double slope = (npts * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / npts;
  const double q = std::exp(slope);
  if (q >= 1.0) return std::numeric_limits<double>::infinity();
  const double head = std::exp(intercept + slope * static_cast<double>(m + 1));
  return head / (1.0 - q);
}

}  // namespace detail

// Coefficients of Phi_n through order m.  Polynomial families whose degree
// fits inside m come back exact with zero tail; everything else carries a
// geometric tail-bound estimate fitted on the last quartile of coefficients.
inline TaylorPoly taylor_coeffs(const FunctionExpr& f, int n, int m) {
  if (n < 0) throw std::invalid_argument("family index must be >= 0");
  if (m < 0) throw std::invalid_argument("expansion order must be >= 0");
  if (m > kDegreeCap)
    throw DegreeCapError("expansion order " + std::to_string(m) +
                         " exceeds the degree cap " + std::to_string(kDegreeCap));
  if (n == 0) {
    std::vector<cplx> c(static_cast<std::size_t>(m) + 1, cplx{0.0, 0.0});
    c[0] = {1.0, 0.0};
    return TaylorPoly(std::move(c), true, 0.0);
  }
  auto coeffs = detail::taylor_node(f.root(), n, m);
  for (const auto& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw OverflowError("Taylor coefficient overflow at index " + std::to_string(n));
  if (f.is_polynomial()) {
    const long long deg = f.poly_degree(n);
    if (deg <= m) return TaylorPoly(std::move(coeffs), true, 0.0);
    return TaylorPoly(std::move(coeffs), false,
                      std::numeric_limits<double>::infinity(),
                      "polynomial degree " + std::to_string(deg) +
                          " exceeds the expansion order");
  }
  const double tail = detail::geometric_tail_bound(coeffs);
  return TaylorPoly(std::move(coeffs), false, tail);
}

}  // namespace entireops
