#include "salab/guard.h"

#include <cmath>
#include <cstdlib>
#include <string>

namespace salab {

int guard_boost() {
  const char* raw = std::getenv("SA_LAB_GUARD");
  if (raw == nullptr || *raw == '\0') return 0;
  try {
    int v = std::stoi(raw);
    return v > 0 ? v : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

int truth_table_variable_guard() { return 24 + guard_boost(); }
int lp_variable_guard() { return 8 + guard_boost(); }
int pattern_label_guard() { return 6 + guard_boost(); }
double naive_tuple_guard() { return 1e7 * std::pow(10.0, guard_boost()); }

}  // namespace salab
