#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hts/model.hpp"

namespace hts::cli {

/// Process exit codes.
enum Exit : int {
  kOk = 0,
  kPredicateInvalid = 1,
  kInputError = 2,
  kRealizationGap = 3,
  kResourceLimit = 4,
};

struct Instance {
  Shape shape;
  ScoreLists lists;
};

/// {"k": 2, "n": [2, 2], "alpha": [1, 1], "kind": "losing", "lists": [[0, 2], [1, 1]]}
/// Throws InputError on any schema violation. With `sort`, each list is sorted.
Instance parse_instance_json(std::string_view text, bool sort);

/// Header line "k n_1 .. n_k alpha_1 .. alpha_k [losing|score]", then one
/// list per line. Blank lines and lines starting with '#' are skipped.
Instance parse_instance_text(std::string_view text, bool sort);

/// Runs one command line (args exclude the program name). Machine output goes
/// to `out` as a single JSON document, notes and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hts::cli
