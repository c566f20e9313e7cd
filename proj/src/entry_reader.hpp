#pragma once

#include "lexlearn/grammar.hpp"
#include "text_util.hpp"

namespace lexlearn::detail {

/// Reads the rest of an `entry` statement, the keyword already consumed.
LexicalEntry read_entry(TextCursor& in, const TypeHierarchy& h);

}  // namespace lexlearn::detail
