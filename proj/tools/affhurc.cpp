// Command-line front end over the C API. JSON output (--format json) is the
// stable interface; text output is for people.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "affhur.h"

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string format = "text";
  affhur_limits limits = affhur_limits_default();
};

int exit_code(affhur_status s) {
  switch (s) {
    case AFFHUR_OK: return 0;
    case AFFHUR_INVALID_INPUT: return 2;
    case AFFHUR_LIMIT_EXCEEDED: return 3;
    default: return 1;
  }
}

void print_text(const Json& j, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_array() && !value.empty() && (value[0].is_array() || value[0].is_object())) {
      std::cout << indent << key << ":\n";
      for (const auto& item : value) {
        if (item.is_object()) {
          std::string line;
          for (const auto& [k, v] : item.items()) line += (line.empty() ? "" : "  ") + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
          std::cout << indent << "  " << line << "\n";
        } else {
          std::cout << indent << "  " << item.dump() << "\n";
        }
      }
    } else if (value.is_object()) {
      std::cout << indent << key << ":\n";
      print_text(value, indent + "  ");
    } else {
      std::cout << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

int emit(const Options& opt, affhur_status st, char* json) {
  if (json) {
    const Json j = Json::parse(json, nullptr, false);
    if (opt.format == "json" || j.is_discarded())
      std::cout << json << "\n";
    else
      print_text(j);
    affhur_string_free(json);
  }
  if (st != AFFHUR_OK) {
    std::string msg = affhur_last_error();
    if (msg.empty()) msg = st == AFFHUR_LIMIT_EXCEEDED ? "search limits reached, result is partial" : "check failed";
    std::cerr << "affhur: " << msg << "\n";
  }
  return exit_code(st);
}

// Opens the group, runs f(sys), prints the report.
template <class F>
int with_group(const Options& opt, const std::string& group, F&& f) {
  affhur_system* sys = nullptr;
  const affhur_status st = affhur_system_create(group.c_str(), &sys);
  if (st != AFFHUR_OK) {
    std::cerr << "affhur: " << affhur_last_error() << "\n";
    return exit_code(st);
  }
  char* json = nullptr;
  const affhur_status rs = f(sys, &json);
  affhur_system_destroy(sys);
  return emit(opt, rs, json);
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  if (const char* env = std::getenv("AFFHUR_NODE_LIMIT")) {
    try {
      opt.limits.nodes = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "affhur: AFFHUR_NODE_LIMIT must be a non-negative integer\n";
      return 2;
    }
  }

  CLI::App app{"Reflection factorizations and Hurwitz action in finite and affine Weyl groups"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", affhur_version());
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", opt.limits.seed, "Seed for randomized suites");
  app.add_option("--threads", opt.limits.threads, "Worker threads (1 = deterministic)")->check(CLI::PositiveNumber);
  app.add_option("-K,--level-bound", opt.limits.level_bound, "Level bound / fiber shift bound")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--depth", opt.limits.depth, "Search depth");
  app.add_option("--nodes", opt.limits.nodes, "Search node cap (also AFFHUR_NODE_LIMIT)");
  app.add_option("--length-ceiling", opt.limits.length_ceiling, "Absolute length ceiling, 0 = 2 * rank");

  std::string group, input, input2, suite, groups;
  std::uint32_t length = 0;
  int rc = 0;

  auto* roots = app.add_subcommand("roots", "List roots, coroots, highest root and connection index");
  roots->add_option("group", group, "Type, e.g. A2 or affine:B2")->required();
  roots->callback([&] { rc = with_group(opt, group, [&](affhur_system* s, char** j) { return affhur_roots(s, j); }); });

  std::string element, tuple;
  auto* qc = app.add_subcommand("check-qc", "Quasi-Coxeter test for an element, or generation test for a tuple");
  qc->add_option("group", group)->required();
  auto* el = qc->add_option("--element", element, "Element: tuple literal (its product) or matrix object");
  auto* tu = qc->add_option("--tuple", tuple, "Reflection tuple");
  el->excludes(tu);
  qc->callback([&] {
    if (element.empty() == tuple.empty()) throw CLI::ValidationError("check-qc", "give exactly one of --element, --tuple");
    rc = with_group(opt, group, [&](affhur_system* s, char** j) {
      return element.empty() ? affhur_check_qc(s, tuple.c_str(), AFFHUR_INPUT_TUPLE, &opt.limits, j)
                             : affhur_check_qc(s, element.c_str(), AFFHUR_INPUT_ELEMENT, &opt.limits, j);
    });
  });

  auto* fac = app.add_subcommand("factorize", "Enumerate reflection factorizations (levels bounded by K)");
  fac->add_option("group", group)->required();
  fac->add_option("element", input)->required();
  fac->add_option("--length", length, "Tuple length, default the absolute length");
  fac->callback([&] {
    rc = with_group(opt, group, [&](affhur_system* s, char** j) { return affhur_factorize(s, input.c_str(), length, &opt.limits, j); });
  });

  auto* len = app.add_subcommand("length", "Absolute (reflection) length");
  len->add_option("group", group)->required();
  len->add_option("element", input)->required();
  len->callback([&] {
    rc = with_group(opt, group, [&](affhur_system* s, char** j) { return affhur_length(s, input.c_str(), &opt.limits, j); });
  });

  auto* orb = app.add_subcommand("orbit", "Hurwitz orbit by breadth-first search");
  orb->add_option("group", group)->required();
  orb->add_option("tuple", input)->required();
  orb->callback([&] {
    rc = with_group(opt, group, [&](affhur_system* s, char** j) { return affhur_orbit(s, input.c_str(), &opt.limits, j); });
  });

  auto* con = app.add_subcommand("connect", "Braid word taking the first tuple to the second");
  con->add_option("group", group)->required();
  con->add_option("tuple1", input)->required();
  con->add_option("tuple2", input2)->required();
  con->callback([&] {
    rc = with_group(opt, group,
                    [&](affhur_system* s, char** j) { return affhur_connect(s, input.c_str(), input2.c_str(), &opt.limits, j); });
  });

  auto* fib = app.add_subcommand("fiber", "Shifts of the repeated-root tail, |shift| <= K");
  fib->add_option("group", group)->required();
  fib->add_option("tuple", input)->required();
  fib->callback([&] {
    rc = with_group(opt, group, [&](affhur_system* s, char** j) { return affhur_fiber(s, input.c_str(), &opt.limits, j); });
  });

  auto* ver = app.add_subcommand("verify", "Run a self-check suite: lemmas, example-a2, generation, main-theorem");
  ver->add_option("suite", suite)->required();
  ver->add_option("--groups", groups, "Comma-separated types, e.g. A2,B2,G2");
  ver->callback([&] {
    char* json = nullptr;
    const affhur_status st = affhur_verify(suite.c_str(), groups.c_str(), &opt.limits, &json);
    if (st == AFFHUR_OK && groups.empty() && suite != "example-a2") std::cerr << "affhur: warning: empty group list, vacuous pass\n";
    rc = emit(opt, st, json);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return rc;
}
