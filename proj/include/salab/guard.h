#ifndef SALAB_GUARD_H_
#define SALAB_GUARD_H_

#include <stdexcept>
#include <string>

namespace salab {

// Raised when an enumeration would exceed its configured size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Extra headroom from the SA_LAB_GUARD environment variable (a non-negative
// integer, default 0). Each guard adds it to its own natural unit: variable
// counts and label counts grow by this many, tuple-count guards by that
// many factors of ten.
int guard_boost();

int truth_table_variable_guard();  // 24 + boost
int lp_variable_guard();           // 8 + boost
int pattern_label_guard();         // 6 + boost
double naive_tuple_guard();        // 1e7 * 10^boost

}  // namespace salab

#endif  // SALAB_GUARD_H_
