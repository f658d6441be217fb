#pragma once

#include <string>
#include <string_view>

#include "ballotree/tree.hpp"

namespace ballotree {

/// Parenthesized tree text. A leaf is a decimal candidate index or an
/// identifier ([A-Za-z_][A-Za-z0-9_]*); an internal node is "(left right)".
/// A document may open with definitions, each "(def name tree)", before the
/// final result tree; a later identifier naming a definition refers to that
/// tree (shared, not copied), shadowing any variable of the same name.
/// "def" itself is reserved and cannot appear as a leaf.

/// Fully expanded form. Refuses trees whose expanded leaf count exceeds
/// expand_limit (the writing would be astronomic for heavily shared DAGs).
std::string to_text(VotingTree t, std::uint64_t expand_limit = 10'000'000);

/// Definition form: one "(def ...)" per internal node referenced more than
/// once, children-first, then the result expression. Generated names avoid
/// the tree's variable names. Output length is linear in the DAG size.
std::string to_text_shared(VotingTree t);

/// Accepts both forms. Malformed text raises parse_error with the byte
/// offset of the offending input.
VotingTree parse_tree(std::string_view text);

}  // namespace ballotree
