#include <freelip/freelip.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitSuiteFailure = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A failed library call, carrying its status and message.
struct LibraryError : std::runtime_error {
  int status;
  LibraryError(int s, const std::string& message) : std::runtime_error(message), status(s) {}
};

void check(int status) {
  if (status != FREELIP_OK) throw LibraryError(status, freelip_last_error());
}

// Owns a string returned by the library.
std::string take(char* text) {
  std::string out = text ? text : "";
  freelip_free_string(text);
  return out;
}

struct Space {
  freelip_space* handle = nullptr;
  ~Space() { freelip_space_free(handle); }
};

struct Config {
  std::string command;
  std::vector<std::string> inputs;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::vector<std::string> suites;
  std::string spaces;
  std::vector<std::string> params;
  bool plan = false;
  std::string base;
  std::string family;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw LibraryError(FREELIP_IO_ERROR, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void record(const Json& doc) { stream() << doc.dump() << "\n"; }

 private:
  std::ofstream file_;
};

std::map<std::string, std::string> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects K=V, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

void load_space(const Config& cfg, const std::string& path, Space& space) {
  check(freelip_space_load(path.c_str(), cfg.base.empty() ? nullptr : cfg.base.c_str(), cfg.tol, &space.handle));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LibraryError(FREELIP_IO_ERROR, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json summary(const std::string& command, Json fields) {
  Json inner{{"command", command}};
  for (auto& [k, v] : fields.items()) inner[k] = v;
  return Json{{"summary", inner}};
}

void require_inputs(const Config& cfg, std::size_t count) {
  if (cfg.inputs.size() < count) throw UsageError(cfg.command + " needs an input file");
  if (count == 1 && cfg.inputs.size() > 1) throw UsageError(cfg.command + " takes a single input file");
}

void reject_csv(const Config& cfg) {
  if (cfg.format != "json") throw UsageError("--format csv is only supported by classify and gen");
}

void reject_params(const Config& cfg) {
  if (!cfg.params.empty()) throw UsageError("--param is not used by " + cfg.command);
}

int run_validate(const Config& cfg) {
  require_inputs(cfg, 1);
  reject_csv(cfg);
  reject_params(cfg);
  Output out(cfg.out);
  for (const auto& path : cfg.inputs) {
    Space s;
    load_space(cfg, path, s);
    Json doc = Json::parse(take([&] {
      char* text = nullptr;
      check(freelip_space_to_json(s.handle, &text));
      return text;
    }()));
    out.record(Json{{"input", path},
                    {"valid", true},
                    {"size", freelip_space_size(s.handle)},
                    {"base", doc["base"]},
                    {"backend", doc["backend"]}});
  }
  out.record(summary("validate", Json{{"inputs", cfg.inputs.size()}, {"ok", true}}));
  return kExitOk;
}

int run_gen(const Config& cfg) {
  if (cfg.family.empty()) throw UsageError("gen needs --family");
  if (!cfg.inputs.empty()) throw UsageError("gen takes no input files");
  Json params = Json::object();
  for (const auto& [k, v] : parse_params(cfg.params)) params[k] = v;
  Space s;
  check(freelip_space_generate(cfg.family.c_str(), params.dump().c_str(), cfg.seed, &s.handle));
  char* text = nullptr;
  if (cfg.format == "csv")
    check(freelip_space_to_csv(s.handle, &text));
  else
    check(freelip_space_to_json(s.handle, &text));
  std::string body = take(text);
  Output out(cfg.out);
  out.stream() << body << (cfg.format == "csv" ? "" : "\n");
  if (!cfg.out.empty())
    std::cout << summary("gen", Json{{"family", cfg.family},
                                     {"params", params},
                                     {"points", freelip_space_size(s.handle)},
                                     {"out", cfg.out}})
                     .dump()
              << "\n";
  return kExitOk;
}

int run_norm(const Config& cfg) {
  require_inputs(cfg, 1);
  reject_csv(cfg);
  reject_params(cfg);
  const std::string& path = cfg.inputs.front();
  std::string text = read_file(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LibraryError(FREELIP_PARSE_ERROR, e.what());
  }
  auto dir = std::filesystem::path(path).parent_path().string();
  if (dir.empty()) dir = ".";
  Output out(cfg.out);
  Json result;
  std::string kind;
  if (doc.is_object() && doc.contains("coeffs")) {
    kind = "vector";
    freelip_vector* mu = nullptr;
    check(freelip_vector_parse(text.c_str(), dir.c_str(), &mu));
    char* res = nullptr;
    int status = freelip_vector_norm(mu, cfg.plan ? 1 : 0, &res);
    freelip_vector_free(mu);
    check(status);
    result = Json::parse(take(res));
  } else if (doc.is_object() && doc.contains("values")) {
    if (cfg.plan) throw UsageError("--plan applies to free-space vectors only");
    kind = "function";
    freelip_function* f = nullptr;
    check(freelip_function_parse(text.c_str(), dir.c_str(), &f));
    char* res = nullptr;
    int status = freelip_function_norm(f, &res);
    freelip_function_free(f);
    check(status);
    result = Json::parse(take(res));
  } else {
    throw LibraryError(FREELIP_PARSE_ERROR, "input has neither 'coeffs' nor 'values'");
  }
  Json record{{"input", path}, {"kind", kind}};
  for (auto& [k, v] : result.items()) record[k] = v;
  out.record(record);
  out.record(summary("norm", Json{{"kind", kind}, {"norm", result["norm"]}}));
  return kExitOk;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

int run_classify(const Config& cfg) {
  require_inputs(cfg, 1);
  reject_params(cfg);
  Space s;
  load_space(cfg, cfg.inputs.front(), s);
  char* text = nullptr;
  check(freelip_classify(s.handle, freelip_default_threads(), &text));
  Json rows = Json::parse(take(text));
  std::size_t exposed = 0, disagreements = 0;
  for (const auto& r : rows) {
    exposed += r["strongly_exposed"].get<bool>() ? 1 : 0;
    disagreements += r["consistent"].get<bool>() ? 0 : 1;
  }
  Output out(cfg.out);
  if (cfg.format == "csv") {
    out.stream() << "x,y,eps0,margin,trivial_segment,strongly_exposed,consistent\n";
    for (const auto& r : rows) {
      out.stream() << csv_cell(r["x"]) << "," << csv_cell(r["y"]) << "," << csv_cell(r["eps0"]) << ","
                   << csv_cell(r["margin"]) << "," << csv_cell(r["trivial_segment"]) << ","
                   << csv_cell(r["strongly_exposed"]) << "," << csv_cell(r["consistent"]) << "\n";
    }
    return kExitOk;
  }
  for (const auto& r : rows) out.record(r);
  out.record(summary("classify", Json{{"input", cfg.inputs.front()},
                                      {"rows", rows.size()},
                                      {"strongly_exposed", exposed},
                                      {"disagreements", disagreements}}));
  return kExitOk;
}

int run_alpha(const Config& cfg) {
  require_inputs(cfg, 1);
  reject_csv(cfg);
  auto params = parse_params(cfg.params);
  int gromov = 0;
  for (const auto& [k, v] : params) {
    if (k != "functionals" || (v != "margin" && v != "gromov"))
      throw UsageError("alpha accepts only --param functionals=margin|gromov");
    gromov = v == "gromov";
  }
  Space s;
  load_space(cfg, cfg.inputs.front(), s);
  char* text = nullptr;
  check(freelip_alpha(s.handle, gromov, cfg.seed, freelip_default_threads(), &text));
  Json cert = Json::parse(take(text));
  Output out(cfg.out);
  out.record(cert);
  out.record(summary("alpha", Json{{"input", cfg.inputs.front()}, {"rho", cert["rho"]}, {"valid", cert["valid"]}}));
  return kExitOk;
}

int run_verify(const Config& cfg) {
  reject_csv(cfg);
  reject_params(cfg);
  if (!cfg.inputs.empty()) throw UsageError("verify takes spaces through --spaces");
  std::vector<std::string> suites = cfg.suites;
  if (suites.empty()) {
    char* names = nullptr;
    check(freelip_suite_names(&names));
    suites = Json::parse(take(names)).get<std::vector<std::string>>();
  }
  Output out(cfg.out);
  std::size_t failures = 0, instances = 0;
  Json failed = Json::array();
  for (const auto& suite : suites) {
    char* text = nullptr;
    int passed = 0;
    check(freelip_verify(suite.c_str(), cfg.spaces.empty() ? nullptr : cfg.spaces.c_str(), cfg.seed,
                         freelip_default_threads(), &text, &passed));
    Json rep = Json::parse(take(text));
    failures += rep["failures"].size();
    instances += rep["instances"].get<std::size_t>();
    if (!passed) failed.push_back(suite);
    out.record(rep);
  }
  out.record(summary("verify", Json{{"suites", suites},
                                    {"instances", instances},
                                    {"failures", failures},
                                    {"failed_suites", failed},
                                    {"ok", failures == 0}}));
  return failures == 0 ? kExitOk : kExitSuiteFailure;
}

int run_report(const Config& cfg) {
  require_inputs(cfg, 1);
  reject_csv(cfg);
  reject_params(cfg);
  Output out(cfg.out);
  for (const auto& path : cfg.inputs) {
    Space s;
    load_space(cfg, path, s);
    char* text = nullptr;
    check(freelip_report(s.handle, freelip_default_threads(), &text));
    Json body = Json::parse(take(text));
    Json rep{{"input", path}};
    for (auto& [k, v] : body.items()) rep[k] = v;
    out.record(rep);
  }
  out.record(summary("report", Json{{"inputs", cfg.inputs.size()}}));
  return kExitOk;
}

int exit_for_status(int status) { return status == FREELIP_PARSE_ERROR ? kExitParse : kExitDomain; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in Lipschitz-free spaces over finite metric spaces", "freelip"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Config cfg;
  app.add_option("--out", cfg.out, "Write the report to PATH instead of stdout");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "Seed for generators and probes");
  app.add_option("--tol", cfg.tol, "Tolerance for float-backend spaces")->check(CLI::PositiveNumber);
  app.add_option("--suite", cfg.suites, "Suite to run (repeatable)");
  app.add_option("--spaces", cfg.spaces, "Space spec, e.g. random:count=50,maxn=8,seed=1");
  app.add_option("--param", cfg.params, "Generator or command parameter K=V (repeatable)");
  app.add_flag("--plan", cfg.plan, "Include the optimal transport plan");
  app.add_option("--base", cfg.base, "Base point label");
  app.add_option("--family", cfg.family, "Generator family for gen");

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Config&);
  };
  const Command commands[] = {
      {"validate", "Check metric files", run_validate},
      {"gen", "Generate a named family", run_gen},
      {"norm", "Free-space norm of a vector, or Lipschitz norm of a function", run_norm},
      {"classify", "Classify every molecule", run_classify},
      {"alpha", "Property alpha certificate", run_alpha},
      {"verify", "Run verification suites", run_verify},
      {"report", "Summarize a space's invariants", run_report},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("inputs", cfg.inputs, "Input files");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  for (const auto& c : commands) {
    if (!app.got_subcommand(c.name)) continue;
    cfg.command = c.name;
    try {
      return c.run(cfg);
    } catch (const UsageError& e) {
      std::cerr << "freelip " << c.name << ": " << e.what() << "\n";
      return kExitUsage;
    } catch (const LibraryError& e) {
      Json err{{"error", freelip_status_name(e.status)}, {"code", e.status}, {"message", e.what()}};
      std::cerr << err.dump() << "\n";
      return exit_for_status(e.status);
    } catch (const std::exception& e) {
      Json err{{"error", "Internal"}, {"code", FREELIP_INTERNAL}, {"message", e.what()}};
      std::cerr << err.dump() << "\n";
      return kExitDomain;
    }
  }
  return kExitUsage;
}
