#pragma once

#include "lexlearn/feature_structure.hpp"
#include "text_util.hpp"

namespace lexlearn::detail {

/// Reads one AVM value at the cursor; used by every file format that embeds
/// feature structures. Tags are local to the value.
FeatureStructure read_avm(TextCursor& cursor, const TypeHierarchy& h);

/// Reads a type expression `name (∨ name)*` (ASCII `\/` also accepted).
LeafSet read_type_expression(TextCursor& cursor, const TypeHierarchy& h);

/// Reads a dotted feature path; a '.' not followed by a name ends it.
FeaturePath read_path(TextCursor& cursor);

}  // namespace lexlearn::detail
