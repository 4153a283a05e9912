#ifndef SALAB_TOOLS_CONFIG_H_
#define SALAB_TOOLS_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "salab/rational.h"

namespace salab::cli {

using Json = nlohmann::ordered_json;

// Bad flags, unknown keys, wrong types and unreadable inputs. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FieldType { kInt, kDouble, kRational, kBool, kString, kIntList, kDoubleList, kStringList };
std::string to_string(FieldType t);
using salab::to_string;

struct Field {
  std::string key;
  FieldType type;
  Json fallback;  // null: no default, the key is simply absent
  std::string help;
  std::vector<std::string> choices;  // allowed values for kString, empty = any
};

struct CommandSchema {
  std::string name;
  std::string summary;
  std::vector<Field> fields;
  const Field* find(const std::string& key) const;
};

const std::vector<CommandSchema>& command_schemas();
const CommandSchema& schema_for(const std::string& command);

// Resolved parameter bundle for one subcommand.
class Config {
 public:
  Config(const CommandSchema* schema, Json values) : schema_(schema), values_(std::move(values)) {}

  const CommandSchema& schema() const { return *schema_; }
  const Json& values() const { return values_; }
  bool has(const std::string& key) const;
  long get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  Rational get_rational(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::vector<long> get_int_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<std::string> get_string_list(const std::string& key) const;

 private:
  const Json& at(const std::string& key) const;

  const CommandSchema* schema_;
  Json values_;
};

// Checks one JSON value against a field; returns it in canonical form.
Json check_value(const Field& field, const Json& value);
// Parses flag text for a field (lists are comma separated).
Json parse_flag(const Field& field, const std::string& text);

// Defaults, then the config file object, then flag overrides.
Config resolve(const CommandSchema& schema, const std::optional<std::string>& config_path,
               const std::map<std::string, std::string>& flags);

// Markdown table of every subcommand's keys.
std::string schema_markdown();

}  // namespace salab::cli

#endif  // SALAB_TOOLS_CONFIG_H_
