#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lexlearn/feature_structure.hpp"
#include "lexlearn/grammar.hpp"

namespace lexlearn {

class Lexicon;

struct Token {
  std::string form;
  std::size_t position = 0;
};

/// Whitespace split; trailing `.`, `!` and `?` are removed from the last
/// token. Throws Error if nothing is left.
std::vector<Token> tokenize(std::string_view sentence);

/// One complete analysis. `fs` is rooted in a bookkeeping node with a
/// `sign` arc (the sentence sign) and one `w<i>` arc per token; the word
/// nodes share structure with the sentence sign.
struct ParseSolution {
  FeatureStructure fs{LeafSet{}};
  NodeId sign = kNoNode;
  std::vector<NodeId> words;
  /// Lexical disjunct each token was parsed with.
  std::vector<std::size_t> disjuncts;

  /// The token's fully instantiated sign, as a standalone structure.
  FeatureStructure projection(std::size_t token) const { return fs.subgraph(words[token]); }
};

struct ParseResult {
  std::vector<Token> tokens;
  /// Disjuncts looked up per token (generic ones for unseen forms).
  std::vector<std::vector<FeatureStructure>> lexical;
  std::vector<bool> known;
  std::vector<ParseSolution> solutions;

  bool grammatical() const { return !solutions.empty(); }
};

/// CKY chart parser for the demo fragment.
///
/// Lexical categories come from the sign's `head` type (noun, adj, det,
/// verb, cop). Rules:
///
///     DET NBAR -> NP     case, num and gender agreement
///     ADJ NBAR -> NBAR   attributive use; mod_sem = noun's cont.ctxt
///     NP VP    -> S      subject = args[0], nominative, number agreement
///     V NP     -> VP     object = args[1], accusative or dative
///     COP NP   -> VP     predicative NP, nominative
///     COP ADJ  -> VP     predicative adjective; mod_sem = args[1] ctxt
///     V        -> VP
///
/// A complete verb-headed S has its args list cut to the realized
/// arguments, and the valence type of their case frame is unified into
/// `arg-st.ctxt`.
class Parser {
 public:
  explicit Parser(const Grammar& grammar, std::size_t max_edges = 10000);

  ParseResult parse(std::string_view sentence, const Lexicon& lexicon) const;
  ParseResult parse(const std::vector<Token>& tokens, const Lexicon& lexicon) const;

  /// Parses pre-looked-up disjuncts (one list per token). Throws Error when
  /// the chart exceeds the edge limit and GrammarGap for an unmapped
  /// argument frame.
  std::vector<ParseSolution> parse_disjuncts(const std::vector<std::vector<FeatureStructure>>& lexical) const;

 private:
  const Grammar& grammar_;
  std::size_t max_edges_;
};

}  // namespace lexlearn
