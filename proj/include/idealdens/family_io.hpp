// JSON documents describing A-families.
//
//   {"field": "Q", "kind": "explicit", "members": [4, 6]}
//   {"field": "Q(sqrt -1)", "kind": "explicit", "members": [[[2, 0, 1]], [[5, 1, 2]]]}
//   {"field": "Q", "kind": "prime_powers", "l": 2}
//   {"field": "Q", "kind": "norm_intervals", "intervals": [[11, 20], [1001, 2000]]}
//
// Quadratic members are lists of (p, conjugate_index, exponent); a bare
// positive integer n stands for the principal ideal (n) in any field.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "idealdens/afree.hpp"

namespace idealdens {

class FamilyFormatError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Throws FieldMismatch when `expected` is given and differs from the document's field.
AFamily parse_family(const nlohmann::json& doc, const std::optional<NumberField>& expected = std::nullopt);
AFamily load_family_file(const std::string& path, const std::optional<NumberField>& expected = std::nullopt);

/// Inverse of parse_family.
nlohmann::ordered_json family_to_json(const AFamily& family);

/// The prime of norm p^f over p with the given conjugate index.
PrimeIdeal prime_by_label(const NumberField& k, std::uint64_t p, int conjugate_index);

}  // namespace idealdens
