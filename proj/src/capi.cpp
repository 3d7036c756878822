#include "affhur.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "affhur/error.hpp"
#include "affhur/literals.hpp"
#include "affhur/verify.hpp"

using namespace affhur;

struct affhur_system {
  GroupSpec spec;
  std::unique_ptr<RootSystem> rs;
};

namespace {

constexpr const char* kVersion = "0.3.0";

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

affhur_limits resolve(const affhur_limits* l) { return l ? *l : affhur_limits_default(); }

QuasiLimits quasi(const affhur_limits& l) {
  QuasiLimits q;
  q.level_bound = l.level_bound;
  q.search = {static_cast<std::size_t>(l.depth), static_cast<std::size_t>(l.nodes)};
  q.threads = l.threads == 0 ? 1 : l.threads;
  q.length_ceiling = l.length_ceiling;
  return q;
}

Json limits_json(const affhur_limits& l) {
  return Json{{"level_bound", l.level_bound}, {"depth", l.depth},     {"nodes", l.nodes},
              {"seed", l.seed},               {"threads", l.threads}, {"length_ceiling", l.length_ceiling}};
}

Json header(const affhur_system* sys, const affhur_limits* l) {
  Json j;
  j["version"] = kVersion;
  if (sys) j["group"] = sys->spec.name();
  if (l) j["limits"] = limits_json(*l);
  return j;
}

// Runs body, which fills `report` and returns a status; maps exceptions.
template <class F>
affhur_status guarded(char** out, Json report, F&& body) {
  affhur_status st = AFFHUR_OK;
  try {
    st = body(report);
    last_error.clear();
  } catch (const ParseError& e) {
    st = AFFHUR_INVALID_INPUT;
    last_error = e.what();
  } catch (const DomainError& e) {
    st = AFFHUR_INVALID_INPUT;
    last_error = e.what();
  } catch (const LimitError& e) {
    st = AFFHUR_LIMIT_EXCEEDED;
    last_error = e.what();
  } catch (const std::exception& e) {
    st = AFFHUR_INTERNAL_ERROR;
    last_error = e.what();
  }
  if (st != AFFHUR_OK && !last_error.empty()) report["error"] = last_error;
  if (out) *out = dup(report.dump());
  return st;
}

void need(const affhur_system* sys) {
  if (!sys) throw DomainError("null system handle");
}

void need_affine(const affhur_system* sys) {
  need(sys);
  if (!sys->spec.affine) throw DomainError("operation needs an affine group, e.g. affine:" + sys->spec.type.name());
}

Json certificate_of(const RootSystem& rs, const AffineTuple& t, const SearchLimits& limits) {
  return to_json(rs, generates_affine(rs, t, limits).certificate);
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

namespace {

template <class P, class Enc>
affhur_status orbit_report(const P& p, const TupleOf<P>& t, const SearchLimits& lim, Json& r, Enc encode) {
  const auto o = orbit(p, t, lim);
  Json tuples = Json::array();
  for (std::size_t i = 0; i < o.tuples.size(); ++i)
    tuples.push_back({{"tuple", encode(o.tuples[i])}, {"braid_word", o.word_to(i)}});
  r["size"] = o.tuples.size();
  r["exhausted"] = o.exhausted;
  r["limits_hit"] = !o.exhausted;
  r["orbit"] = tuples;
  return o.exhausted ? AFFHUR_OK : AFFHUR_LIMIT_EXCEEDED;
}

}  // namespace

extern "C" {

const char* affhur_version(void) { return kVersion; }

affhur_limits affhur_limits_default(void) {
  affhur_limits l;
  l.level_bound = 2;
  l.depth = 16;
  l.nodes = 1'000'000;
  l.seed = 20240611;
  l.threads = 1;
  l.length_ceiling = 0;
  return l;
}

const char* affhur_last_error(void) { return last_error.c_str(); }

void affhur_string_free(char* s) { std::free(s); }

affhur_status affhur_system_create(const char* group, affhur_system** out) {
  if (!out) return AFFHUR_INVALID_INPUT;
  *out = nullptr;
  try {
    auto sys = std::make_unique<affhur_system>();
    sys->spec = parse_group(group ? group : "");
    sys->rs = std::make_unique<RootSystem>(sys->spec.type);
    *out = sys.release();
    last_error.clear();
    return AFFHUR_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return AFFHUR_INVALID_INPUT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AFFHUR_INTERNAL_ERROR;
  }
}

void affhur_system_destroy(affhur_system* sys) { delete sys; }

affhur_status affhur_roots(const affhur_system* sys, char** out_json) {
  return guarded(out_json, header(sys, nullptr), [&](Json& r) {
    need(sys);
    const RootSystem& rs = *sys->rs;
    std::vector<RootId> ids;
    for (std::uint32_t i = 0; i < rs.num_roots(); ++i) ids.push_back({i});
    std::sort(ids.begin(), ids.end(), [&](RootId a, RootId b) { return rs.root(a).coords < rs.root(b).coords; });
    Json roots = Json::array();
    for (auto id : ids)
      roots.push_back({{"root", format_root(rs, id)},
                       {"coroot", rs.coroot(id).coords},
                       {"positive", rs.is_positive(id)},
                       {"long", rs.is_long(id)}});
    Json cartan = Json::array();
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      auto row = rs.cartan().row(i);
      cartan.push_back(IntVector(row.begin(), row.end()));
    }
    r["rank"] = rs.rank();
    r["cartan"] = cartan;
    r["symmetrizer"] = rs.symmetrizer();
    r["ratio_delta"] = rs.ratio_delta();
    r["num_roots"] = rs.num_roots();
    r["highest_root"] = format_root(rs, rs.highest_root());
    r["connection_index"] = connection_index(rs).get_str();
    r["roots"] = roots;
    return AFFHUR_OK;
  });
}

affhur_status affhur_check_qc(const affhur_system* sys, const char* input_json, affhur_input_kind kind,
                              const affhur_limits* limits, char** out_json) {
  const affhur_limits l = resolve(limits);
  return guarded(out_json, header(sys, &l), [&](Json& r) {
    need(sys);
    const RootSystem& rs = *sys->rs;
    const Json input = parse_json(input_json ? input_json : "");
    const QuasiLimits q = quasi(l);
    const auto t0 = std::chrono::steady_clock::now();
    r["limits_hit"] = false;
    if (!sys->spec.affine) {
      const FiniteWeylGroup g(rs);
      if (kind == AFFHUR_INPUT_TUPLE) {
        const auto t = finite_tuple_from_json(rs, input);
        r["verdict"] = !t.empty() && g.generates_w0(t);
        r["parabolic"] = g.is_parabolic(t);
      } else {
        const auto w = finite_element_from_json(rs, input);
        r["absolute_length"] = absolute_length(w);
        r["verdict"] = g.is_quasi_coxeter(w);
        r["parabolic_quasi_coxeter"] = g.is_parabolic_quasi_coxeter(w);
      }
      return AFFHUR_OK;
    }
    if (kind == AFFHUR_INPUT_TUPLE) {
      const auto t = affine_tuple_from_json(rs, input);
      if (t.size() == rs.rank() + 1) {
        const auto g = generates_affine(rs, t, q.search);
        r["method"] = "lattice";
        r["verdict"] = g.generates;
        r["certificate"] = to_json(rs, g.certificate);
        r["braid_word"] = g.certificate.normalizing_braid;
      } else {
        const auto g = closure_generates(rs, t);
        r["method"] = "closure";
        r["verdict"] = g ? Json(*g) : Json(nullptr);
        r["limits_hit"] = !g.has_value();
      }
      r["stage_timings"] = {{"total", elapsed(t0)}};
      return r["limits_hit"].get<bool>() ? AFFHUR_LIMIT_EXCEEDED : AFFHUR_OK;
    }
    const auto w = affine_element_from_json(rs, input);
    const auto res = is_quasi_coxeter_affine(rs, w, q);
    r["element"] = to_json(w);
    r["verdict"] = res.verdict;
    r["conclusive"] = res.conclusive;
    r["witness"] = res.witness ? to_json(rs, *res.witness) : Json(nullptr);
    r["witness_beyond_level_bound"] = res.witness_beyond_bound;
    r["certificate"] = res.witness ? certificate_of(rs, *res.witness, q.search) : Json(nullptr);
    r["braid_word"] = res.witness ? r["certificate"]["normalizing_braid"] : Json(nullptr);
    std::string note = res.note;
    try {
      const std::size_t len = absolute_length_affine(rs, w, q.length_ceiling);
      r["absolute_length"] = len;
      if (len > rs.rank() + 1)
        note = "length-" + std::to_string(len) + " element; quasi-Coxeter here means length rank+1";
      r["parabolic_quasi_coxeter"] = is_parabolic_quasi_coxeter_affine(rs, w, q);
    } catch (const LimitError& e) {
      r["absolute_length"] = nullptr;
      r["parabolic_quasi_coxeter"] = nullptr;
      r["limits_hit"] = true;
      note = e.what();
    }
    r["note"] = note;
    r["stage_timings"] = {{"total", elapsed(t0)}};
    return AFFHUR_OK;
  });
}

affhur_status affhur_factorize(const affhur_system* sys, const char* element_json, uint32_t length,
                               const affhur_limits* limits, char** out_json) {
  const affhur_limits l = resolve(limits);
  return guarded(out_json, header(sys, &l), [&](Json& r) {
    need(sys);
    const RootSystem& rs = *sys->rs;
    const Json input = parse_json(element_json ? element_json : "");
    Json facs = Json::array();
    if (sys->spec.affine) {
      const auto w = affine_element_from_json(rs, input);
      const std::size_t m = length ? length : absolute_length_affine(rs, w, l.length_ceiling);
      for (const auto& t : enumerate_factorizations(rs, w, m, l.level_bound, l.threads ? l.threads : 1))
        facs.push_back(to_json(rs, t));
      r["element"] = to_json(w);
      r["length"] = m;
    } else {
      const FiniteWeylGroup g(rs);
      const auto w = finite_element_from_json(rs, input);
      const std::size_t m = length ? length : absolute_length(w);
      for (const auto& t : g.reflection_sequences(w, m)) facs.push_back(to_json(rs, t));
      r["element"] = to_json(w);
      r["length"] = m;
    }
    r["count"] = facs.size();
    r["factorizations"] = facs;
    return AFFHUR_OK;
  });
}

affhur_status affhur_length(const affhur_system* sys, const char* element_json, const affhur_limits* limits,
                            char** out_json) {
  const affhur_limits l = resolve(limits);
  return guarded(out_json, header(sys, &l), [&](Json& r) {
    need(sys);
    const RootSystem& rs = *sys->rs;
    const Json input = parse_json(element_json ? element_json : "");
    if (sys->spec.affine) {
      const auto w = affine_element_from_json(rs, input);
      r["element"] = to_json(w);
      r["absolute_length"] = absolute_length_affine(rs, w, l.length_ceiling);
    } else {
      const auto w = finite_element_from_json(rs, input);
      r["element"] = to_json(w);
      r["absolute_length"] = absolute_length(w);
    }
    return AFFHUR_OK;
  });
}


affhur_status affhur_orbit(const affhur_system* sys, const char* tuple_json, const affhur_limits* limits,
                           char** out_json) {
  const affhur_limits l = resolve(limits);
  return guarded(out_json, header(sys, &l), [&](Json& r) {
    need(sys);
    const RootSystem& rs = *sys->rs;
    const Json input = parse_json(tuple_json ? tuple_json : "");
    const SearchLimits lim{static_cast<std::size_t>(l.depth), static_cast<std::size_t>(l.nodes)};
    if (sys->spec.affine)
      return orbit_report(AffineReflectionPolicy{&rs}, affine_tuple_from_json(rs, input), lim, r,
                          [&](const AffineTuple& t) { return to_json(rs, t); });
    return orbit_report(FiniteReflectionPolicy{&rs}, finite_tuple_from_json(rs, input), lim, r,
                        [&](const FiniteTuple& t) { return to_json(rs, t); });
  });
}

affhur_status affhur_connect(const affhur_system* sys, const char* tuple1_json, const char* tuple2_json,
                             const affhur_limits* limits, char** out_json) {
  const affhur_limits l = resolve(limits);
  return guarded(out_json, header(sys, &l), [&](Json& r) {
    need(sys);
    const RootSystem& rs = *sys->rs;
    const Json a = parse_json(tuple1_json ? tuple1_json : "");
    const Json b = parse_json(tuple2_json ? tuple2_json : "");
    const SearchLimits lim{static_cast<std::size_t>(l.depth), static_cast<std::size_t>(l.nodes)};
    if (sys->spec.affine) {
      const auto t1 = affine_tuple_from_json(rs, a);
      const auto t2 = affine_tuple_from_json(rs, b);
      if (t1.size() != t2.size()) throw DomainError("tuples of different length");
      const auto w = product(rs, t1);
      if (!(product(rs, t2) == w)) throw DomainError("tuples have different products");
      const auto rep = connect_reduced(rs, w, t1, t2, lim);
      r["found"] = rep.word.has_value();
      r["braid_word"] = rep.word ? Json(*rep.word) : Json(nullptr);
      r["pipeline"] = rep.pipeline;
      r["failed_stage"] = rep.failed_stage;
      r["stage_timings"] = {{"normalize", rep.stage_seconds[0]},
                            {"align", rep.stage_seconds[1]},
                            {"fiber", rep.stage_seconds[2]},
                            {"fallback", rep.stage_seconds[3]}};
      r["limits_hit"] = rep.limits_hit;
      return rep.word ? AFFHUR_OK : AFFHUR_LIMIT_EXCEEDED;
    }
    const FiniteWeylGroup g(rs);
    const auto t1 = finite_tuple_from_json(rs, a);
    const auto t2 = finite_tuple_from_json(rs, b);
    if (t1.size() != t2.size()) throw DomainError("tuples of different length");
    if (!(g.product(t1) == g.product(t2))) throw DomainError("tuples have different products");
    const auto t0 = std::chrono::steady_clock::now();
    const auto word = connect(FiniteReflectionPolicy{&rs}, t1, t2, lim);
    r["found"] = word.has_value();
    r["braid_word"] = word ? Json(*word) : Json(nullptr);
    r["stage_timings"] = {{"search", elapsed(t0)}};
    r["limits_hit"] = !word.has_value();
    return word ? AFFHUR_OK : AFFHUR_LIMIT_EXCEEDED;
  });
}

affhur_status affhur_apply_braid(const affhur_system* sys, const char* tuple_json, const char* word_json,
                                 char** out_json) {
  return guarded(out_json, header(sys, nullptr), [&](Json& r) {
    need(sys);
    const RootSystem& rs = *sys->rs;
    const Json t = parse_json(tuple_json ? tuple_json : "");
    const BraidWord w = braid_from_json(parse_json(word_json ? word_json : ""));
    if (sys->spec.affine)
      r["tuple"] = to_json(rs, apply_braid(AffineReflectionPolicy{&rs}, affine_tuple_from_json(rs, t), w));
    else
      r["tuple"] = to_json(rs, apply_braid(FiniteReflectionPolicy{&rs}, finite_tuple_from_json(rs, t), w));
    return AFFHUR_OK;
  });
}

affhur_status affhur_fiber(const affhur_system* sys, const char* tuple_json, const affhur_limits* limits,
                           char** out_json) {
  const affhur_limits l = resolve(limits);
  return guarded(out_json, header(sys, &l), [&](Json& r) {
    need_affine(sys);
    const RootSystem& rs = *sys->rs;
    const auto base = affine_tuple_from_json(rs, parse_json(tuple_json ? tuple_json : ""));
    const AffineReflectionPolicy aff{&rs};
    Json members = Json::array();
    const std::int64_t gap = base.size() >= 2 ? base[base.size() - 2].level - base.back().level : 0;
    for (const auto& t : fiber(rs, base, l.level_bound)) {
      Json m{{"tuple", to_json(rs, t)}};
      const std::int64_t j = t.back().level - base.back().level;
      if (gap != 0 && j % gap == 0) {
        const std::int64_t p = j / gap;
        const int letter = static_cast<int>(base.size() - 1);
        BraidWord word(static_cast<std::size_t>(p < 0 ? -p : p), p < 0 ? -letter : letter);
        if (!(apply_braid(aff, base, word) == t)) throw InternalError("fiber power does not reach the member");
        m["braid_word"] = word;
      } else {
        m["braid_word"] = nullptr;
      }
      members.push_back(std::move(m));
    }
    r["base"] = to_json(rs, base);
    r["shift_bound"] = l.level_bound;
    r["members"] = members;
    return AFFHUR_OK;
  });
}

affhur_status affhur_verify(const char* suite, const char* groups, const affhur_limits* limits, char** out_json) {
  const affhur_limits l = resolve(limits);
  return guarded(out_json, header(nullptr, &l), [&](Json& r) {
    const std::string name = suite ? suite : "";
    std::vector<std::string> list;
    std::string g = groups ? groups : "";
    for (std::size_t pos = 0; pos < g.size();) {
      std::size_t comma = g.find(',', pos);
      if (comma == std::string::npos) comma = g.size();
      if (comma > pos) list.push_back(g.substr(pos, comma - pos));
      pos = comma + 1;
    }
    VerifyOptions opt;
    opt.seed = l.seed;
    opt.limits = quasi(l);
    r["suite"] = name;
    const auto results = run_suite(name, list, opt);
    Json checks = Json::array();
    bool ok = true;
    for (const auto& c : results) {
      ok = ok && c.passed;
      checks.push_back({{"group", c.group},
                        {"check", c.name},
                        {"passed", c.passed},
                        {"detail", c.detail},
                        {"seconds", c.seconds}});
    }
    if (list.empty() && name != "example-a2") r["warning"] = "empty group list, nothing checked";
    r["checks"] = checks;
    r["passed"] = ok;
    return ok ? AFFHUR_OK : AFFHUR_CHECK_FAILED;
  });
}

}  // extern "C"
