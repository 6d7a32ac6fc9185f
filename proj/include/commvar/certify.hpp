#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "commvar/geomdim.hpp"
#include "commvar/io.hpp"

namespace commvar {

// Closed-form dimension ledger for one (n, r).
struct DimReport {
  Index n = 0, r = 0;
  Index dim_N_component = 0;        // n^2 - n + (r-1)(n-1)
  Index dim_G_component = 0;        // n^2 + (r-1) n
  Index dim_uP = 0;                 // floor(n^2/4)
  Index dim_VP = 0;                 // (r+1) dim_uP
  Index lower_bound_nilpotent = 0;  // max(dim_N_component, dim_VP)
  Index lower_bound_general = 0;    // max(dim_G_component, dim_VP + r)
};

inline DimReport formula_dims(Index n, Index r) {
  if (n < 1 || r < 1) throw std::invalid_argument("formula_dims: n, r >= 1 required");
  DimReport d;
  d.n = n;
  d.r = r;
  d.dim_N_component = n * n - n + (r - 1) * (n - 1);
  d.dim_G_component = n * n + (r - 1) * n;
  d.dim_uP = n * n / 4;
  d.dim_VP = (r + 1) * d.dim_uP;
  d.lower_bound_nilpotent = std::max(d.dim_N_component, d.dim_VP);
  d.lower_bound_general = std::max(d.dim_G_component, d.dim_VP + r);
  return d;
}

inline Json dim_report_to_json(const DimReport& d) {
  return Json{{"format_version", kFormatVersion},
              {"n", d.n},
              {"r", d.r},
              {"dim_N_component", d.dim_N_component},
              {"dim_G_component", d.dim_G_component},
              {"dim_uP", d.dim_uP},
              {"dim_VP", d.dim_VP},
              {"lower_bound_nilpotent", d.lower_bound_nilpotent},
              {"lower_bound_general", d.lower_bound_general}};
}

enum class CertKind { AlgebraDim, ComponentDim, GammaDim };
enum class Verdict { Reducible, NotFound, Unknown };

inline const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::AlgebraDim: return "AlgebraDim";
    case CertKind::ComponentDim: return "ComponentDim";
    case CertKind::GammaDim: return "GammaDim";
  }
  return "?";
}

inline CertKind cert_kind_parse(const std::string& s) {
  if (s == "AlgebraDim") return CertKind::AlgebraDim;
  if (s == "ComponentDim") return CertKind::ComponentDim;
  if (s == "GammaDim") return CertKind::GammaDim;
  throw std::invalid_argument("unknown certificate kind: " + s);
}

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Reducible: return "REDUCIBLE";
    case Verdict::NotFound: return "NOT_FOUND";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "?";
}

inline Verdict verdict_parse(const std::string& s) {
  if (s == "REDUCIBLE") return Verdict::Reducible;
  if (s == "NOT_FOUND") return Verdict::NotFound;
  if (s == "UNKNOWN") return Verdict::Unknown;
  throw std::invalid_argument("unknown verdict: " + s);
}

// A self-contained claim about C_r of the nilpotent cone in gl_n: the
// witness holds enough data to recompute quantity from scratch, and
// verdict REDUCIBLE additionally asserts quantity > threshold.
struct Certificate {
  CertKind kind = CertKind::AlgebraDim;
  Index n = 0, r = 0;
  FieldSpec field;
  Json witness;
  Index quantity = 0;
  Index threshold = 0;
  Verdict verdict = Verdict::Unknown;
  std::string paper_basis;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
};

namespace basis_text {

inline constexpr const char* kAlgebraReducible =
    "The closure of the set of commuting nilpotent r-tuples whose entries all commute with a "
    "single regular nilpotent matrix is an irreducible component of the commuting nilpotent "
    "variety, and every tuple in that component generates an associative matrix algebra of "
    "dimension at most n-1. The embedded tuple is commuting and nilpotent yet generates an "
    "algebra of dimension exceeding n-1 (quantity versus threshold), so it lies in a different "
    "irreducible component and the variety is reducible.";

inline constexpr const char* kComponentReducible =
    "Conjugates of r-tuples drawn from the abelian nilradical of the stabilizer of a "
    "half-dimensional subspace form an irreducible subset of the commuting nilpotent variety. "
    "The rank of the chart differential recorded in the witness bounds the dimension of that "
    "subset from below, and it exceeds n^2-n+(r-1)(n-1), the dimension of the irreducible "
    "component whose tuples commute with a regular nilpotent. A subset too large for the known "
    "component forces a second component, so the variety is reducible.";

inline constexpr const char* kGammaReducible =
    "For n = 4s, conjugates of the triples (v, X, Y), with v a fixed two-step nilpotent, X "
    "ranging over a 4s^2-dimensional linear family commuting with v, and Y ranging over the "
    "partner space of X inside that family, form an irreducible set of commuting nilpotent "
    "triples of dimension (n^2 - dim z(v)) + 4s^2 + 3s^2 = n^2 + s^2. This exceeds n^2+n-2, "
    "the dimension of the component of triples commuting with a regular nilpotent, so the "
    "variety of commuting nilpotent triples is reducible.";

inline constexpr const char* kNotFound =
    "No reducibility certificate was found within the recorded search budget. The methods are "
    "one-sided: absence of a certificate asserts nothing, and in particular this output never "
    "claims irreducibility.";

}  // namespace basis_text

// Witness entries over F_p are residues of integer matrices lying in the
// same structured family, so mod-p ranks and span dimensions bound their
// characteristic-0 counterparts from below and the certified excess
// persists over the rationals.
inline std::string field_semantics_text(const FieldSpec& f) {
  if (f.is_rational())
    return "computed over the rationals; certifies the characteristic-0 statement directly";
  return "computed over F_p, p = " + std::to_string(f.p) +
         "; the witness lifts to integer matrices in the same family and mod-p ranks bound "
         "characteristic-0 ranks from below, so the certificate also holds in characteristic 0";
}

inline Json certificate_to_json(const Certificate& c) {
  return Json{{"format_version", kFormatVersion},
              {"kind", cert_kind_name(c.kind)},
              {"n", c.n},
              {"r", c.r},
              {"field", field_to_json(c.field)},
              {"witness", c.witness},
              {"quantity", c.quantity},
              {"threshold", c.threshold},
              {"verdict", verdict_name(c.verdict)},
              {"paper_basis", c.paper_basis},
              {"seed", c.seed},
              {"budget", c.budget}};
}

inline Certificate certificate_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("certificate: expected object");
  for (const char* key : {"format_version", "kind", "n", "r", "field", "witness", "quantity",
                          "threshold", "verdict", "paper_basis", "seed", "budget"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("certificate: missing ") + key);
  if (!j.at("format_version").is_number_integer() ||
      j.at("format_version").get<int>() != kFormatVersion)
    throw std::invalid_argument("certificate: unsupported format_version");
  Certificate c;
  c.kind = cert_kind_parse(j.at("kind").get<std::string>());
  if (!j.at("n").is_number_integer() || !j.at("r").is_number_integer())
    throw std::invalid_argument("certificate: n/r must be integers");
  c.n = j.at("n").get<Index>();
  c.r = j.at("r").get<Index>();
  c.field = field_from_json(j.at("field"));
  c.witness = j.at("witness");
  if (!j.at("quantity").is_number_integer() || !j.at("threshold").is_number_integer())
    throw std::invalid_argument("certificate: quantity/threshold must be integers");
  c.quantity = j.at("quantity").get<Index>();
  c.threshold = j.at("threshold").get<Index>();
  c.verdict = verdict_parse(j.at("verdict").get<std::string>());
  if (!j.at("paper_basis").is_string())
    throw std::invalid_argument("certificate: paper_basis must be a string");
  c.paper_basis = j.at("paper_basis").get<std::string>();
  if (!json_is_uint(j.at("seed")) || !json_is_uint(j.at("budget")))
    throw std::invalid_argument("certificate: seed/budget must be nonnegative integers");
  c.seed = j.at("seed").get<std::uint64_t>();
  c.budget = j.at("budget").get<std::uint64_t>();
  return c;
}

// Knobs shared by the certificate searches.  algebra_draws is the only
// open-ended budget; enlarging any knob can only turn NOT_FOUND into
// REDUCIBLE, never the reverse, because draws are consumed sequentially
// from one generator and a found witness ends the search.
struct CertifyOptions {
  std::uint64_t seed = 0;
  std::uint64_t algebra_draws = 128;
  int rank_reseeds = 3;
  int partner_reseeds = 8;
};

// Searches for a commuting nilpotent r-tuple generating an algebra of
// dimension above n-1.  For r >= n >= 4 the first n lower-left block units
// (padded by repeating the last) succeed deterministically; otherwise a
// bounded randomized search over the two commutative families available
// here (block-unit spans and polynomials in a regular nilpotent) runs, and
// honestly reports NOT_FOUND when nothing beats the threshold.
template <class S>
Certificate certify_algebra(Index n, Index r, const FieldContext<S>& F, std::uint64_t seed = 0,
                            std::uint64_t draws = 128) {
  if (n < 2 || r < 2) throw std::invalid_argument("certify_algebra: n, r >= 2 required");
  Certificate c;
  c.kind = CertKind::AlgebraDim;
  c.n = n;
  c.r = r;
  c.field = F.spec();
  c.seed = seed;
  c.budget = draws;
  c.threshold = n - 1;

  const auto u = parabolic_nilradical<S>(n, F);

  auto finish = [&](const MatTuple<S>& t, Index dim, const char* construction,
                    std::uint64_t used) {
    c.quantity = dim;
    c.verdict = dim > c.threshold ? Verdict::Reducible : Verdict::NotFound;
    c.witness = Json{{"construction", construction},
                     {"tuple", tuple_to_json(t)},
                     {"algebra_dim", dim},
                     {"search_draws", used},
                     {"field_semantics", field_semantics_text(F.spec())}};
    c.paper_basis = c.verdict == Verdict::Reducible ? basis_text::kAlgebraReducible
                                                    : basis_text::kNotFound;
  };

  if (r >= n && n >= 4) {
    std::vector<Mat<S>> mats;
    for (Index i = 0; i < r; ++i)
      mats.push_back(u.basis[static_cast<std::size_t>(std::min<Index>(i, n - 1))]);
    MatTuple<S> t(std::move(mats));
    const Index dim = algebra_closure(t).dim;
    if (dim > c.threshold) {
      finish(t, dim, "block-basis", 0);
      return c;
    }
  }

  const bool poly_ok =
      F.spec().is_rational() || F.spec().p > static_cast<std::uint64_t>(n);
  std::vector<Mat<S>> powers;  // x^1 .. x^{n-1} of the regular nilpotent
  {
    const Mat<S> x = regular_nilpotent<S>(n, F);
    Mat<S> p = x;
    for (Index k = 1; k < n; ++k) {
      powers.push_back(p);
      p = Mat<S>(p * x);
    }
  }

  SeededRng rng(seed);
  Index best_dim = -1;
  std::optional<MatTuple<S>> best;
  for (std::uint64_t d = 0; d < draws; ++d) {
    std::vector<Mat<S>> mats;
    if (d % 2 == 0 || !poly_ok) {
      for (Index i = 0; i < r; ++i) {
        Mat<S> m = zeros<S>(n, n, F);
        for (const auto& b : u.basis) m += F.sample(rng) * b;
        mats.push_back(std::move(m));
      }
    } else {
      for (Index i = 0; i < r; ++i) {
        Mat<S> m = zeros<S>(n, n, F);
        for (const auto& pk : powers) m += F.sample(rng) * pk;
        mats.push_back(std::move(m));
      }
    }
    MatTuple<S> t(std::move(mats));
    const Index dim = algebra_closure(t).dim;
    if (dim > best_dim) {
      best_dim = dim;
      best = t;
    }
    if (best_dim > c.threshold) {
      finish(t, dim, "span-search", d + 1);
      return c;
    }
  }
  finish(*best, best_dim, "span-search", draws);
  return c;
}

// Rank of the conjugated block-nilradical chart against the dimension of
// the component of tuples commuting with a regular nilpotent.
template <class S>
Certificate certify_component_dim(Index n, Index r, const FieldContext<S>& F,
                                  std::uint64_t seed = 0, int max_reseeds = 3) {
  if (n < 2 || r < 2) throw std::invalid_argument("certify_component_dim: n, r >= 2 required");
  const DimReport dims = formula_dims(n, r);
  const ParamRank<S> pr = param_rank_parabolic<S>(n, r, F, seed, max_reseeds);
  Certificate c;
  c.kind = CertKind::ComponentDim;
  c.n = n;
  c.r = r;
  c.field = F.spec();
  c.seed = seed;
  c.budget = static_cast<std::uint64_t>(max_reseeds);
  c.quantity = pr.rank;
  c.threshold = dims.dim_N_component;
  c.verdict = c.quantity > c.threshold ? Verdict::Reducible : Verdict::NotFound;
  c.witness = Json{{"construction", "block-chart"},
                   {"base_tuple", tuple_to_json(pr.base)},
                   {"jacobian_rows", pr.jac_rows},
                   {"jacobian_cols", pr.jac_cols},
                   {"rank", pr.rank},
                   {"expected_rank", pr.expected},
                   {"generic", pr.generic},
                   {"chart_seed", pr.seed},
                   {"reseeds", pr.reseeds},
                   {"field_semantics", field_semantics_text(F.spec())}};
  c.paper_basis = c.verdict == Verdict::Reducible ? basis_text::kComponentReducible
                                                  : basis_text::kNotFound;
  return c;
}

// Dimension parts of the anchored triple family in gl_{4s} against the
// component dimension n^2+n-2 at r = 3.  REDUCIBLE additionally requires
// the partner space at the sampled X to have exactly the generic dimension
// 3s^2; a larger fiber sits over a thin locus and proves nothing.
template <class S>
Certificate certify_gamma(Index s, const FieldContext<S>& F, std::uint64_t seed = 0,
                          int max_reseeds = 8) {
  if (s < 1) throw std::invalid_argument("certify_gamma: s >= 1 required");
  const Index n = 4 * s;
  const GammaFamilyDim gd = gamma_family_dim<S>(s, F, seed, max_reseeds);

  // the accepted attempt is replayed to embed the sampled X
  SeededRng rng(gd.seed);
  const GammaCoords<S> x = random_gamma_coords<S>(s, F, rng);

  Json xb = Json::array();
  for (const auto& blk : x.a) xb.push_back(entries_to_json(blk));

  Certificate c;
  c.kind = CertKind::GammaDim;
  c.n = n;
  c.r = 3;
  c.field = F.spec();
  c.seed = seed;
  c.budget = static_cast<std::uint64_t>(max_reseeds);
  c.quantity = gd.total;
  c.threshold = n * n + n - 2;
  c.verdict = gd.partner_generic && c.quantity > c.threshold ? Verdict::Reducible
                                                             : Verdict::NotFound;
  c.witness = Json{{"construction", "anchored-triple-family"},
                   {"s", s},
                   {"x_blocks", std::move(xb)},
                   {"anchor_centralizer_dim", n * n - gd.orbit_of_v},
                   {"orbit_of_anchor", gd.orbit_of_v},
                   {"x_family_dim", gd.family_dim},
                   {"partner_dim", gd.partner_dim},
                   {"partner_generic", gd.partner_generic},
                   {"chart_seed", gd.seed},
                   {"reseeds", gd.reseeds},
                   {"field_semantics", field_semantics_text(F.spec())}};
  c.paper_basis = c.verdict == Verdict::Reducible ? basis_text::kGammaReducible
                                                  : basis_text::kNotFound;
  return c;
}

// Method dispatcher: component chart, then algebra search, then (r = 3,
// 4 | n) the anchored triple family.  First REDUCIBLE wins; otherwise the
// attempts are aggregated and the top-level numbers come from the attempt
// closest to its threshold, earlier method on ties.
template <class S>
Certificate certify(Index n, Index r, const FieldContext<S>& F, const CertifyOptions& opt = {}) {
  if (n < 2 || r < 2) throw std::invalid_argument("certify: n, r >= 2 required");
  std::vector<Certificate> attempts;
  attempts.push_back(certify_component_dim<S>(n, r, F, opt.seed, opt.rank_reseeds));
  if (attempts.back().verdict == Verdict::Reducible) return attempts.back();
  attempts.push_back(certify_algebra<S>(n, r, F, opt.seed, opt.algebra_draws));
  if (attempts.back().verdict == Verdict::Reducible) return attempts.back();
  if (r == 3 && n % 4 == 0) {
    attempts.push_back(certify_gamma<S>(n / 4, F, opt.seed, opt.partner_reseeds));
    if (attempts.back().verdict == Verdict::Reducible) return attempts.back();
  }

  std::size_t sel = 0;
  for (std::size_t i = 1; i < attempts.size(); ++i) {
    const Index slack_i = attempts[i].quantity - attempts[i].threshold;
    const Index slack_s = attempts[sel].quantity - attempts[sel].threshold;
    if (slack_i > slack_s) sel = i;
  }

  Certificate c;
  c.kind = attempts[sel].kind;
  c.n = n;
  c.r = r;
  c.field = F.spec();
  c.seed = opt.seed;
  c.budget = opt.algebra_draws;
  c.quantity = attempts[sel].quantity;
  c.threshold = attempts[sel].threshold;
  c.verdict = Verdict::NotFound;
  c.paper_basis = basis_text::kNotFound;
  Json arr = Json::array();
  for (const auto& a : attempts)
    arr.push_back(Json{{"kind", cert_kind_name(a.kind)},
                       {"quantity", a.quantity},
                       {"threshold", a.threshold},
                       {"budget", a.budget},
                       {"witness", a.witness}});
  c.witness = Json{{"attempts", std::move(arr)}, {"selected", sel}};
  return c;
}

// Known bounds on the least reducible n, stated without reference to any
// particular method.
struct BoundsRow {
  std::string variety;  // "nilpotent" or "general-linear"
  std::string r_range;  // "r=3" or "r>=4"
  Index lo = 0, hi = 0;
  std::string statement;
};

inline std::vector<BoundsRow> bounds_ledger() {
  return {
      {"nilpotent", "r>=4", 4, 4,
       "For every r >= 4 the least n making the variety of commuting nilpotent r-tuples "
       "reducible is exactly 4."},
      {"nilpotent", "r=3", 4, 16,
       "For triples of commuting nilpotent matrices the least reducible n lies between 4 "
       "and 16."},
      {"general-linear", "r>=4", 4, 4,
       "For every r >= 4 the least n making the variety of commuting r-tuples of arbitrary "
       "matrices reducible is exactly 4."},
      {"general-linear", "r=3", 11, 29,
       "For triples of arbitrary commuting matrices the variety is irreducible for n <= 10 "
       "and reducible for every n >= 30; the least reducible n lies between 11 and 29."},
  };
}

inline Json bounds_ledger_to_json() {
  Json rows = Json::array();
  for (const auto& row : bounds_ledger())
    rows.push_back(Json{{"variety", row.variety},
                        {"r_range", row.r_range},
                        {"interval", Json::array({row.lo, row.hi})},
                        {"statement", row.statement}});
  return Json{{"format_version", kFormatVersion}, {"rows", std::move(rows)}};
}

struct VerifyResult {
  bool ok = false;
  std::string message;
};

namespace detail {

template <class S>
Index recompute_algebra_quantity(const Json& w, Index n, Index r, const FieldContext<S>& F) {
  const MatTuple<S> t = tuple_from_json<S>(w.at("tuple"), F);
  if (t.n() != n || t.r() != r) throw std::invalid_argument("witness tuple has the wrong shape");
  if (!is_commuting_tuple(t)) throw std::invalid_argument("witness tuple does not commute");
  if (!is_nilpotent_tuple(t)) throw std::invalid_argument("witness tuple is not nilpotent");
  return algebra_closure(t).dim;
}

// The chart only parametrizes commuting nilpotent tuples while the base
// point stays inside the lower-left block, so membership is part of what
// gets re-verified.
template <class S>
Index recompute_component_quantity(const Json& w, Index n, Index r, const FieldContext<S>& F) {
  const MatTuple<S> base = tuple_from_json<S>(w.at("base_tuple"), F);
  if (base.n() != n || base.r() != r)
    throw std::invalid_argument("witness base tuple has the wrong shape");
  const ParabolicShape shape = parabolic_shape(n);
  for (Index k = 0; k < r; ++k)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if ((i < shape.top || j >= shape.top) && !is_zero_scalar(base[k](i, j)))
          throw std::invalid_argument("witness base tuple leaves the lower-left block");
  return param_rank_parabolic_at<S>(base).rank;
}

template <class S>
Index recompute_gamma_quantity(const Json& w, Index n, const FieldContext<S>& F,
                               bool require_generic) {
  if (!w.contains("s") || !w.at("s").is_number_integer())
    throw std::invalid_argument("gamma witness: missing s");
  const Index s = w.at("s").get<Index>();
  if (s < 1 || n != 4 * s) throw std::invalid_argument("gamma witness: n must equal 4s");
  const Json& xb = w.at("x_blocks");
  if (!xb.is_array() || xb.size() != 4)
    throw std::invalid_argument("gamma witness: x_blocks must hold 4 blocks");
  GammaCoords<S> x;
  x.s = s;
  for (int blk = 0; blk < 4; ++blk)
    x.a[static_cast<std::size_t>(blk)] =
        entries_from_json<S>(xb.at(static_cast<std::size_t>(blk)), s, s, F);

  const Index zv = centralizer(gamma_v<S>(s, F)).dim;
  const Index partner = gamma_partner_space<S>(s, x).dim;
  auto check_stored = [&](const char* key, Index actual) {
    if (w.contains(key) && w.at(key).get<Index>() != actual)
      throw std::invalid_argument(std::string("gamma witness: stored ") + key +
                                  " does not match recomputation");
  };
  check_stored("anchor_centralizer_dim", zv);
  check_stored("orbit_of_anchor", n * n - zv);
  check_stored("x_family_dim", 4 * s * s);
  check_stored("partner_dim", partner);
  if (require_generic && partner != 3 * s * s)
    throw std::invalid_argument("gamma witness: partner space is degenerate at the stored X");
  return (n * n - zv) + 4 * s * s + partner;
}

inline Index expected_threshold(CertKind kind, Index n, Index r) {
  switch (kind) {
    case CertKind::AlgebraDim: return n - 1;
    case CertKind::ComponentDim: return formula_dims(n, r).dim_N_component;
    case CertKind::GammaDim: return n * n + n - 2;
  }
  throw std::logic_error("unreachable");
}

template <class S>
Index recompute_quantity(CertKind kind, const Json& w, Index n, Index r,
                         const FieldContext<S>& F, bool reducible) {
  switch (kind) {
    case CertKind::AlgebraDim: return recompute_algebra_quantity<S>(w, n, r, F);
    case CertKind::ComponentDim: return recompute_component_quantity<S>(w, n, r, F);
    case CertKind::GammaDim:
      if (r != 3) throw std::invalid_argument("gamma certificate requires r = 3");
      return recompute_gamma_quantity<S>(w, n, F, reducible);
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

// Recomputes quantity from the embedded witness data alone and checks every
// stored number it can: thresholds by kind, verdict consistency, and for
// aggregated NOT_FOUND certificates each recorded attempt.
template <class S>
VerifyResult verify_certificate_with(const Certificate& c, const FieldContext<S>& F) {
  auto fail = [](std::string msg) { return VerifyResult{false, std::move(msg)}; };
  try {
    if (!(F.spec() == c.field)) return fail("field context does not match certificate field");
    if (c.n < 2 || c.r < 2) return fail("certificate needs n, r >= 2");
    if (c.verdict == Verdict::Unknown) return fail("verdict UNKNOWN never verifies");

    const bool reducible = c.verdict == Verdict::Reducible;
    if (reducible && !(c.quantity > c.threshold))
      return fail("REDUCIBLE requires quantity > threshold");
    if (!reducible && c.quantity > c.threshold)
      return fail("NOT_FOUND is inconsistent with quantity > threshold");

    if (!reducible && c.witness.is_object() && c.witness.contains("attempts")) {
      const Json& arr = c.witness.at("attempts");
      if (!arr.is_array() || arr.empty()) return fail("attempts must be a nonempty array");
      bool top_matched = false;
      Index best_slack = 0;
      bool have_best = false;
      CertKind best_kind = CertKind::AlgebraDim;
      Index best_q = 0, best_t = 0;
      for (const auto& a : arr) {
        const CertKind kind = cert_kind_parse(a.at("kind").get<std::string>());
        const Index q = a.at("quantity").get<Index>();
        const Index t = a.at("threshold").get<Index>();
        if (t != detail::expected_threshold(kind, c.n, c.r))
          return fail("attempt threshold does not match its formula");
        if (q > t) return fail("NOT_FOUND attempt stores quantity > threshold");
        const Index rq = detail::recompute_quantity<S>(kind, a.at("witness"), c.n, c.r, F, false);
        if (rq != q) return fail("attempt quantity does not recompute from its witness");
        const Index slack = q - t;
        if (!have_best || slack > best_slack) {
          have_best = true;
          best_slack = slack;
          best_kind = kind;
          best_q = q;
          best_t = t;
        }
      }
      top_matched = best_kind == c.kind && best_q == c.quantity && best_t == c.threshold;
      if (!top_matched) return fail("top-level numbers do not match the best attempt");
      return {true, "certificate re-verified (all attempts recomputed)"};
    }

    if (c.threshold != detail::expected_threshold(c.kind, c.n, c.r))
      return fail("threshold does not match its formula");
    const Index rq = detail::recompute_quantity<S>(c.kind, c.witness, c.n, c.r, F, reducible);
    if (rq != c.quantity)
      return fail("quantity does not recompute from the witness (stored " +
                  std::to_string(c.quantity) + ", recomputed " + std::to_string(rq) + ")");
    return {true, "certificate re-verified"};
  } catch (const std::exception& e) {
    return fail(std::string("witness rejected: ") + e.what());
  }
}

inline VerifyResult verify_certificate(const Certificate& c) {
  if (c.field.is_rational()) return verify_certificate_with<Rat>(c, FieldContext<Rat>{});
  return verify_certificate_with<Fp>(c, FieldContext<Fp>(c.field.p));
}

}  // namespace commvar
