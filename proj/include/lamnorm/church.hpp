#pragma once

#include <optional>

#include "lamnorm/syntax.hpp"

namespace lamnorm {

// \f.\x. f^n x
TermPtr church_encode(std::size_t n);

// Inverts church_encode up to alpha; nullopt when t is not a Church numeral.
std::optional<std::size_t> church_decode(const TermPtr& t);

// plus / mul / exp definitions used by the benchmark suite, as an env file.
extern const char* const kChurchPrelude;

} // namespace lamnorm
