#include "lexlearn/parser.hpp"

#include <cctype>
#include <optional>

#include "lexlearn/error.hpp"
#include "lexlearn/lexicon.hpp"

namespace lexlearn {

std::vector<Token> tokenize(std::string_view sentence) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    std::size_t start = i;
    while (i < sentence.size() && !std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    if (i > start) tokens.push_back(Token{std::string(sentence.substr(start, i - start)), tokens.size()});
  }
  if (!tokens.empty()) {
    auto& last = tokens.back().form;
    while (!last.empty() && (last.back() == '.' || last.back() == '!' || last.back() == '?')) last.pop_back();
    if (last.empty()) tokens.pop_back();
  }
  if (tokens.empty()) throw Error("empty sentence");
  return tokens;
}

namespace {

enum class Cat { Det, Nbar, Np, Adj, V, Vp, Cop, S };

struct Edge {
  Cat cat;
  FeatureStructure fs;
  std::vector<std::size_t> disjuncts;
  std::size_t realized_args = 0;

  NodeId sign() const { return *fs.arc(fs.root(), "sign"); }
};

struct Paths {
  FeaturePath head = FeaturePath::parse("head");
  FeaturePath head_case = FeaturePath::parse("head.case");
  FeaturePath head_num = FeaturePath::parse("head.num");
  FeaturePath head_gend = FeaturePath::parse("head.gend");
  FeaturePath ind_num = FeaturePath::parse("cont.ind.num");
  FeaturePath ind_gend = FeaturePath::parse("cont.ind.gend");
  FeaturePath cont = FeaturePath::parse("cont");
  FeaturePath cont_ctxt = FeaturePath::parse("cont.ctxt");
  FeaturePath prd_ctxt = FeaturePath::parse("head.prd.ctxt");
  FeaturePath mod_sem = FeaturePath::parse("head.mod_sem");
  FeaturePath arg_ctxt = FeaturePath::parse("arg-st.ctxt");
  FeaturePath args = FeaturePath::parse("arg-st.args");
  FeaturePath arg0_cont = FeaturePath::parse("arg-st.args[0].loc.cont");
  FeaturePath arg0_case = FeaturePath::parse("arg-st.args[0].case");
  FeaturePath arg1_cont = FeaturePath::parse("arg-st.args[1].loc.cont");
  FeaturePath arg1_case = FeaturePath::parse("arg-st.args[1].case");
  FeaturePath arg1_ctxt = FeaturePath::parse("arg-st.args[1].loc.cont.ctxt");
  FeaturePath case_ = FeaturePath::parse("case");
};

const Paths& paths() {
  static const Paths p;
  return p;
}

struct Types {
  LeafSet noun, adj, det, verb, cop, attr, pred, nom, acc_dat;

  explicit Types(const TypeHierarchy& h)
      : noun(h.at("noun")),
        adj(h.at("adj")),
        det(h.at("det")),
        verb(h.at("verb")),
        cop(h.at("cop")),
        attr(h.at("attr")),
        pred(h.at("pred")),
        nom(h.at("nom")),
        acc_dat(h.at("acc") | h.at("dat")) {}
};

std::optional<Cat> lexical_category(const FeatureStructure& fs, const Types& t) {
  auto head = resolve_path(fs, paths().head);
  if (!head) return std::nullopt;
  LeafSet type = fs.type(*head);
  if (t.noun.includes(type)) return Cat::Nbar;
  if (t.adj.includes(type)) return Cat::Adj;
  if (t.det.includes(type)) return Cat::Det;
  if (t.verb.includes(type)) return Cat::V;
  if (t.cop.includes(type)) return Cat::Cop;
  return std::nullopt;
}

// Constraint application on a combined graph. Any failure (type clash,
// closed list, atom) rejects the combination.
class Combination {
 public:
  Combination(const Edge& left, const Edge& right, const TypeHierarchy& h) : fs_(left.fs), h_(h) {
    left_root_ = fs_.root();
    left_ = *fs_.arc(left_root_, "sign");
    right_root_ = fs_.graft(right.fs);
    right_ = *fs_.arc(right_root_, "sign");
  }

  NodeId left() const { return left_; }
  NodeId right() const { return right_; }

  void unify(NodeId a, const FeaturePath& pa, NodeId b, const FeaturePath& pb) {
    if (!ok_) return;
    try {
      NodeId x = extend_path(fs_, h_, pa, h_.top(), a);
      NodeId y = extend_path(fs_, h_, pb, h_.top(), b);
      ok_ = fs_.unify_nodes(x, y);
    } catch (const PathError&) {
      ok_ = false;
    }
  }

  void restrict(NodeId a, const FeaturePath& pa, LeafSet t) {
    if (!ok_) return;
    try {
      NodeId x = extend_path(fs_, h_, pa, h_.top(), a);
      LeafSet merged = fs_.type(x) & t;
      ok_ = !merged.empty();
      if (ok_) fs_.set_type(x, merged);
    } catch (const PathError&) {
      ok_ = false;
    }
  }

  /// Builds the mother node (sign = `head`, word arcs of both daughters).
  std::optional<FeatureStructure> finish(NodeId head) {
    if (!ok_) return std::nullopt;
    NodeId root = fs_.add_node(h_.top());
    fs_.set_arc(root, "sign", head);
    for (NodeId daughter : {left_root_, right_root_}) {
      auto arcs = fs_.arcs(daughter);
      for (const auto& a : arcs)
        if (a.feature != "sign") fs_.set_arc(root, a.feature, a.target);
    }
    fs_.set_root(root);
    if (!fs_.normalize()) return std::nullopt;
    return std::move(fs_);
  }

 private:
  FeatureStructure fs_;
  const TypeHierarchy& h_;
  NodeId left_root_, right_root_, left_, right_;
  bool ok_ = true;
};

struct Rule {
  Cat left, right, mother;
};

constexpr Rule kRules[] = {
    {Cat::Det, Cat::Nbar, Cat::Np}, {Cat::Adj, Cat::Nbar, Cat::Nbar}, {Cat::Np, Cat::Vp, Cat::S},
    {Cat::V, Cat::Np, Cat::Vp},     {Cat::Cop, Cat::Np, Cat::Vp},     {Cat::Cop, Cat::Adj, Cat::Vp},
};

std::optional<Edge> combine(const Rule& rule, const Edge& l, const Edge& r, const TypeHierarchy& h, const Types& t) {
  const Paths& p = paths();
  Combination c(l, r, h);
  NodeId a = c.left(), b = c.right();
  NodeId head = b;
  std::size_t realized = 0;
  switch (rule.mother) {
    case Cat::Np:
      c.unify(a, p.head_case, b, p.head_case);
      c.unify(a, p.head_num, b, p.head_num);
      c.unify(b, p.head_num, b, p.ind_num);
      c.unify(a, p.head_gend, b, p.ind_gend);
      break;
    case Cat::Nbar:
      c.restrict(a, p.prd_ctxt, t.attr);
      c.unify(a, p.mod_sem, b, p.cont_ctxt);
      break;
    case Cat::S:
      c.unify(a, p.cont, b, p.arg0_cont);
      c.unify(a, p.head_case, b, p.arg0_case);
      c.restrict(a, p.head_case, t.nom);
      c.unify(a, p.head_num, b, p.head_num);
      realized = std::max<std::size_t>(1, r.realized_args);
      break;
    case Cat::Vp:
      head = a;
      realized = 2;
      if (rule.right == Cat::Np) {
        c.unify(b, p.cont, a, p.arg1_cont);
        c.unify(b, p.head_case, a, p.arg1_case);
        c.restrict(b, p.head_case, rule.left == Cat::Cop ? t.nom : t.acc_dat);
      } else {
        c.restrict(b, p.prd_ctxt, t.pred);
        c.unify(b, p.mod_sem, a, p.arg1_ctxt);
      }
      break;
    default:
      return std::nullopt;
  }
  auto fs = c.finish(head);
  if (!fs) return std::nullopt;
  Edge out{rule.mother, std::move(*fs), l.disjuncts, realized};
  out.disjuncts.insert(out.disjuncts.end(), r.disjuncts.begin(), r.disjuncts.end());
  return out;
}

// Cuts the verb's args list after the realized arguments and unifies the
// valence type of their case frame into arg-st.ctxt.
bool complete_verb_frame(Edge& edge, const Grammar& g) {
  const TypeHierarchy& h = g.types();
  FeatureStructure& fs = edge.fs;
  NodeId sign = edge.sign();
  auto args = resolve_path(fs, paths().args, sign);
  if (!args) throw GrammarGap("verb without arg-st.args");
  ListView view = list_elements(fs, *args);
  if (edge.realized_args == 0) throw GrammarGap("verb with no realized arguments");
  if (view.elements.size() < edge.realized_args) throw GrammarGap("realized arguments missing from args");

  std::vector<LeafSet> frame;
  for (std::size_t i = 0; i < edge.realized_args; ++i) {
    auto c = resolve_path(fs, paths().case_, view.elements[i]);
    frame.push_back(c ? fs.type(*c) : h.top());
  }
  LeafSet valence = g.valence().type_of(frame, h);

  if (view.elements.size() > edge.realized_args) {
    NodeId cell = *args;
    for (std::size_t i = 1; i < edge.realized_args; ++i) cell = *fs.arc(cell, "rest");
    fs.set_arc(cell, "rest", fs.add_node(h.list_open()));
  }
  NodeId ctxt = extend_path(fs, h, paths().arg_ctxt, h.top(), sign);
  LeafSet merged = fs.type(ctxt) & valence;
  if (merged.empty()) return false;
  fs.set_type(ctxt, merged);
  return fs.normalize();
}

}  // namespace

Parser::Parser(const Grammar& grammar, std::size_t max_edges) : grammar_(grammar), max_edges_(max_edges) {}

ParseResult Parser::parse(std::string_view sentence, const Lexicon& lexicon) const {
  return parse(tokenize(sentence), lexicon);
}

ParseResult Parser::parse(const std::vector<Token>& tokens, const Lexicon& lexicon) const {
  ParseResult result;
  result.tokens = tokens;
  for (const auto& tok : tokens) {
    result.lexical.push_back(lookup(lexicon, grammar_, tok.form));
    result.known.push_back(lexicon.contains(tok.form));
  }
  result.solutions = parse_disjuncts(result.lexical);
  return result;
}

std::vector<ParseSolution> Parser::parse_disjuncts(const std::vector<std::vector<FeatureStructure>>& lexical) const {
  const TypeHierarchy& h = grammar_.types();
  const Types types(h);
  const std::size_t n = lexical.size();
  std::vector<std::vector<std::vector<Edge>>> chart(n, std::vector<std::vector<Edge>>(n + 1));
  std::size_t edges = 0;
  auto add = [&](std::vector<Edge>& cell, Edge e) {
    if (++edges > max_edges_) throw Error("chart limit of " + std::to_string(max_edges_) + " edges exceeded");
    cell.push_back(std::move(e));
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < lexical[i].size(); ++d) {
      const FeatureStructure& word = lexical[i][d];
      auto cat = lexical_category(word, types);
      if (!cat) continue;
      FeatureStructure fs(h.top());
      NodeId sign = fs.graft(word);
      fs.set_arc(fs.root(), "sign", sign);
      fs.set_arc(fs.root(), "w" + std::to_string(i), sign);
      fs.normalize();
      Edge e{*cat, std::move(fs), {d}, 0};
      if (*cat == Cat::V) add(chart[i][i + 1], Edge{Cat::Vp, e.fs, e.disjuncts, 0});
      add(chart[i][i + 1], std::move(e));
    }
  }

  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len;
      for (std::size_t k = i + 1; k < j; ++k) {
        for (const auto& rule : kRules) {
          for (const auto& l : chart[i][k]) {
            if (l.cat != rule.left) continue;
            for (const auto& r : chart[k][j]) {
              if (r.cat != rule.right) continue;
              if (auto e = combine(rule, l, r, h, types)) add(chart[i][j], std::move(*e));
            }
          }
        }
      }
    }
  }

  std::vector<ParseSolution> out;
  for (auto& e : chart[0][n]) {
    if (e.cat != Cat::S) continue;
    auto head = resolve_path(e.fs, paths().head, e.sign());
    if (head && types.verb.includes(e.fs.type(*head)) && !complete_verb_frame(e, grammar_)) continue;
    ParseSolution s;
    s.sign = e.sign();
    for (std::size_t i = 0; i < n; ++i) s.words.push_back(*e.fs.arc(e.fs.root(), "w" + std::to_string(i)));
    s.disjuncts = e.disjuncts;
    s.fs = std::move(e.fs);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace lexlearn
