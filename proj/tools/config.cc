#include "config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace salab::cli {
namespace {

Field graph_field() { return {"graph", FieldType::kString, nullptr, "graph JSON file; sampled from n,k,p,seed when absent", {}}; }
Field n_field(long n = 4) { return {"n", FieldType::kInt, n, "vertices per block", {}}; }
Field k_field(long k = 3) { return {"k", FieldType::kInt, k, "number of blocks", {}}; }
Field p_field() { return {"p", FieldType::kRational, "1/2", "edge probability", {}}; }
Field clique_field() { return {"D", FieldType::kDouble, 0.0, "clique parameter; when positive, p = n^(-2/D)", {}}; }
Field seed_field(long seed = 0) { return {"seed", FieldType::kInt, seed, "first RNG seed", {}}; }
Field trials_field(long trials = 1) { return {"trials", FieldType::kInt, trials, "number of consecutive seeds", {}}; }
Field d_field() { return {"d", FieldType::kInt, 1L, "vertex-cover cap of the pattern family", {}}; }
Field out_field() { return {"out", FieldType::kString, "-", "output path, - for stdout", {}}; }

std::vector<CommandSchema> build_schemas() {
  std::vector<CommandSchema> s;
  s.push_back({"gen-graph", "sample a block-model graph",
               {n_field(), k_field(), p_field(), clique_field(), seed_field(), out_field()}});
  s.push_back({"build-formula", "write the clique formula of a graph",
               {{"graph", FieldType::kString, nullptr, "graph JSON file", {}}, out_field()}});
  s.push_back({"verify", "check a certificate against a graph or formula",
               {graph_field(),
                {"formula", FieldType::kString, nullptr, "formula JSON file (instead of graph)", {}},
                {"certificate", FieldType::kString, nullptr, "certificate JSON file", {}},
                {"truth_table", FieldType::kBool, true, "run the truth-table verifier", {}},
                {"canonical", FieldType::kBool, true, "run the canonical-form verifier", {}},
                out_field()}});
  s.push_back({"lp-solve", "solve the primal or dual LP exactly and print the optimum",
               {graph_field(),
                {"formula", FieldType::kString, nullptr, "formula JSON file (instead of graph)", {}},
                {"program", FieldType::kString, "primal", "which program to solve", {"primal", "dual"}},
                {"degree_cap", FieldType::kInt, -1L, "monomial degree cap, -1 for none", {}},
                {"export", FieldType::kString, nullptr, "write the program in LP format here", {}},
                {"bundle", FieldType::kString, nullptr, "write a JSON result bundle here", {}}}});
  s.push_back({"enumerate-cores", "list pattern graphs or cores with their optional edges",
               {{"k", FieldType::kInt, 4L, "number of labels", {}},
                d_field(),
                {"mode", FieldType::kString, "cores", "family to list", {"all", "cores"}},
                out_field()}});
  s.push_back({"eval-measure", "evaluate the pseudo-measure on rectangles, CSV output",
               {graph_field(), n_field(), k_field(), p_field(), clique_field(),
                {"eta", FieldType::kDouble, 0.0, "with D, d = floor(eta*D)", {}},
                seed_field(), trials_field(), d_field(),
                {"rectangle", FieldType::kStringList, Json::array({"full"}),
                 "rectangles: full, or monomials such as \"x3 x5 !x7\"", {}},
                {"strategy", FieldType::kString, "grouped", "evaluation strategy", {"naive", "factorized", "grouped"}},
                {"mode", FieldType::kString, "exact", "arithmetic", {"exact", "double"}},
                out_field()}});
  s.push_back({"split-sum", "split the character sum around singleton blocks",
               {graph_field(), n_field(), k_field(), p_field(), seed_field(), d_field(),
                {"rectangle", FieldType::kString, nullptr, "monomial whose rectangle is split", {}},
                {"singletons", FieldType::kIntList, nullptr, "singleton blocks; default every block with one vertex", {}},
                out_field()}});
  s.push_back({"decompose", "decompose rectangles into small, axiom and good parts",
               {graph_field(), n_field(8), k_field(), p_field(), seed_field(), trials_field(), d_field(),
                {"rectangle", FieldType::kString, "full", "full, or a monomial", {}},
                {"s", FieldType::kDouble, 2.0, "error-set threshold", {}},
                {"beta", FieldType::kDouble, 0.0, "neighborhood slack, 0 for 1/k", {}},
                {"C", FieldType::kDouble, 324.0, "regime constant", {}},
                {"check_measure", FieldType::kBool, false, "compare the measure of the parts with the whole", {}},
                {"samples", FieldType::kInt, 200L, "membership samples per rectangle", {}},
                out_field()}});
  s.push_back({"check-wellbehaved", "check neighborhood and error-set properties",
               {graph_field(), n_field(64), k_field(4), p_field(), seed_field(), trials_field(),
                {"beta", FieldType::kDouble, 0.25, "neighborhood slack", {}},
                {"d_cap", FieldType::kInt, 1L, "largest tuple in the neighborhood scan", {}},
                {"s", FieldType::kInt, 1L, "error-set threshold", {}},
                {"w", FieldType::kInt, 1L, "error-set size cap", {}},
                {"ell", FieldType::kInt, 1L, "tuple size bound for error sets", {}},
                {"gamma", FieldType::kDouble, 0.1, "error-set slack", {}},
                out_field()}});
  s.push_back({"tail-probe", "Monte Carlo tail of a single-edge character sum",
               {n_field(20), p_field(),
                {"m", FieldType::kInt, 2L, "even moment", {}},
                trials_field(10000), seed_field(1),
                {"s_grid", FieldType::kDoubleList, Json::array({10, 20, 40, 60, 80, 120, 200, 401}), "thresholds", {}},
                {"kappa", FieldType::kDouble, 0.0, "scale, 0 for |Q|", {}},
                {"r", FieldType::kDouble, 1.0, "weight bound", {}},
                out_field()}});
  s.push_back({"validate", "run the invariant suite",
               {{"suite", FieldType::kString, "all", "which checks", {"cores", "lp", "measure", "all"}},
                {"k", FieldType::kInt, 4L, "largest label count for the core checks", {}},
                seed_field(),
                {"instances", FieldType::kInt, 20L, "random instances for the lp and measure checks", {}},
                out_field()}});
  s.push_back({"report", "aggregate CSV tables into mean and stderr per group",
               {{"inputs", FieldType::kStringList, Json::array(), "CSV files", {}},
                {"format", FieldType::kString, "csv", "output format", {"csv", "json"}},
                out_field()}});
  return s;
}

[[noreturn]] void bad(const Field& f, const std::string& what) {
  throw UsageError("key '" + f.key + "': " + what);
}

Json check_scalar(const Field& f, FieldType t, const Json& v) {
  switch (t) {
    case FieldType::kInt:
      if (!v.is_number_integer()) bad(f, "expected an integer");
      return v.get<long>();
    case FieldType::kDouble:
      if (!v.is_number()) bad(f, "expected a number");
      return v.get<double>();
    case FieldType::kRational: {
      std::string text;
      if (v.is_number_integer()) text = std::to_string(v.get<long>());
      else if (v.is_string()) text = v.get<std::string>();
      else bad(f, "expected a rational as \"a/b\" or an integer");
      try {
        return salab::to_string(parse_rational(text));
      } catch (const std::exception&) {
        bad(f, "not a rational: " + text);
      }
    }
    case FieldType::kBool:
      if (!v.is_boolean()) bad(f, "expected true or false");
      return v.get<bool>();
    case FieldType::kString: {
      if (!v.is_string()) bad(f, "expected a string");
      auto s = v.get<std::string>();
      if (!f.choices.empty() && std::find(f.choices.begin(), f.choices.end(), s) == f.choices.end()) {
        std::string all;
        for (const auto& c : f.choices) all += (all.empty() ? "" : "|") + c;
        bad(f, "'" + s + "' is not one of " + all);
      }
      return s;
    }
    default:
      bad(f, "internal: list type in scalar check");
  }
}

FieldType element_type(FieldType t) {
  switch (t) {
    case FieldType::kIntList: return FieldType::kInt;
    case FieldType::kDoubleList: return FieldType::kDouble;
    case FieldType::kStringList: return FieldType::kString;
    default: return t;
  }
}

bool is_list(FieldType t) {
  return t == FieldType::kIntList || t == FieldType::kDoubleList || t == FieldType::kStringList;
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

Json scalar_from_text(const Field& f, FieldType t, const std::string& raw) {
  std::string text = trim(raw);
  switch (t) {
    case FieldType::kInt: {
      long v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) bad(f, "expected an integer, got '" + raw + "'");
      return v;
    }
    case FieldType::kDouble: {
      std::istringstream in(text);
      double v = 0;
      in >> v;
      if (text.empty() || !in || !in.eof()) bad(f, "expected a number, got '" + raw + "'");
      return v;
    }
    case FieldType::kRational:
      return check_scalar(f, t, Json(text));
    case FieldType::kBool:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      bad(f, "expected true or false, got '" + raw + "'");
    default:
      return check_scalar(f, t, Json(text));
  }
}

}  // namespace

std::string to_string(FieldType t) {
  switch (t) {
    case FieldType::kInt: return "int";
    case FieldType::kDouble: return "number";
    case FieldType::kRational: return "rational";
    case FieldType::kBool: return "bool";
    case FieldType::kString: return "string";
    case FieldType::kIntList: return "int list";
    case FieldType::kDoubleList: return "number list";
    case FieldType::kStringList: return "string list";
  }
  return "?";
}

const Field* CommandSchema::find(const std::string& key) const {
  for (const auto& f : fields)
    if (f.key == key) return &f;
  return nullptr;
}

const std::vector<CommandSchema>& command_schemas() {
  static const std::vector<CommandSchema> schemas = build_schemas();
  return schemas;
}

const CommandSchema& schema_for(const std::string& command) {
  for (const auto& s : command_schemas())
    if (s.name == command) return s;
  throw UsageError("unknown command '" + command + "'");
}

Json check_value(const Field& field, const Json& value) {
  if (!is_list(field.type)) return check_scalar(field, field.type, value);
  if (!value.is_array()) bad(field, "expected an array");
  Json out = Json::array();
  for (const auto& v : value) out.push_back(check_scalar(field, element_type(field.type), v));
  return out;
}

Json parse_flag(const Field& field, const std::string& text) {
  if (!is_list(field.type)) return scalar_from_text(field, field.type, text);
  Json out = Json::array();
  if (trim(text).empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    out.push_back(scalar_from_text(field, element_type(field.type), item));
  return out;
}

Config resolve(const CommandSchema& schema, const std::optional<std::string>& config_path,
               const std::map<std::string, std::string>& flags) {
  Json values = Json::object();
  for (const auto& f : schema.fields)
    if (!f.fallback.is_null()) values[f.key] = f.fallback;

  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw UsageError("cannot read config file " + *config_path);
    Json file;
    try {
      file = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw UsageError("config file " + *config_path + " is not valid JSON: " + e.what());
    }
    if (!file.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, v] : file.items()) {
      const Field* f = schema.find(key);
      if (!f) throw UsageError("unknown key '" + key + "' for " + schema.name);
      values[key] = check_value(*f, v);
    }
  }

  for (const auto& [key, text] : flags) {
    const Field* f = schema.find(key);
    if (!f) throw UsageError("unknown key '" + key + "' for " + schema.name);
    values[key] = parse_flag(*f, text);
  }
  return Config(&schema, std::move(values));
}

bool Config::has(const std::string& key) const { return values_.contains(key); }

const Json& Config::at(const std::string& key) const {
  if (!values_.contains(key)) throw UsageError(schema_->name + " needs '" + key + "'");
  return values_.at(key);
}

long Config::get_int(const std::string& key) const { return at(key).get<long>(); }
double Config::get_double(const std::string& key) const { return at(key).get<double>(); }
Rational Config::get_rational(const std::string& key) const {
  return parse_rational(at(key).get<std::string>());
}
bool Config::get_bool(const std::string& key) const { return at(key).get<bool>(); }
std::string Config::get_string(const std::string& key) const { return at(key).get<std::string>(); }
std::vector<long> Config::get_int_list(const std::string& key) const {
  return at(key).get<std::vector<long>>();
}
std::vector<double> Config::get_double_list(const std::string& key) const {
  return at(key).get<std::vector<double>>();
}
std::vector<std::string> Config::get_string_list(const std::string& key) const {
  return at(key).get<std::vector<std::string>>();
}

std::string schema_markdown() {
  std::ostringstream out;
  for (const auto& s : command_schemas()) {
    out << "### " << s.name << "\n\n" << s.summary << ".\n\n";
    out << "| key | type | default | meaning |\n|---|---|---|---|\n";
    for (const auto& f : s.fields) {
      std::string def = f.fallback.is_null() ? "" : f.fallback.dump();
      std::string help = f.help;
      if (!f.choices.empty()) {
        std::string all;
        for (const auto& c : f.choices) all += (all.empty() ? "" : ", ") + c;
        help += " (" + all + ")";
      }
      std::string cell;
      for (char c : help) cell += c == '|' ? '/' : c;
      out << "| " << f.key << " | " << to_string(f.type) << " | " << def << " | " << cell << " |\n";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace salab::cli
