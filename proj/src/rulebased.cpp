#include "qdmr/rulebased.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "qdmr/errors.hpp"
#include "qdmr/text.hpp"

namespace qdmr {

namespace {

constexpr std::array<std::string_view, 12> kRuleNames = {
    "be-root", "be-auxpass", "do-subj", "subj-do-have", "conjunction", "how-many",
    "single-prep", "multi-prep", "relcl", "superlative", "acl-verb", "sent-coref"};

const std::set<std::string, std::less<>> kImperatives = {
    "find", "show", "list", "return", "give", "tell", "name", "display", "get"};

bool is_noun(const DepToken& t) { return t.pos.starts_with("NN"); }
bool is_verb(const DepToken& t) { return t.pos.starts_with("VB"); }
bool is_wh(const DepToken& t) { return t.pos == "WDT" || t.pos == "WP" || t.pos == "WP$" || t.pos == "WRB"; }

bool is_punct(const DepToken& t) {
  return t.deprel == "punct" || t.pos == "." || t.pos == "," || t.pos == ":" || t.pos == "``" ||
         t.pos == "''";
}

bool is_imperative(const DepToken& t) {
  return t.head == 0 && t.pos == "VB" && kImperatives.contains(t.lemma);
}

bool hidden(const DepToken& t) { return is_punct(t) || is_imperative(t); }

using Mask = std::vector<char>;

// Refs inside a rule's output are local: -1 is the first new step.
Piece local_ref(int j, int sentence, int anchor) {
  Piece p;
  p.kind = Piece::Kind::Ref;
  p.ref = -(j + 1);
  p.sentence = sentence;
  p.token = anchor;
  return p;
}

Piece literal(std::string s) {
  Piece p;
  p.kind = Piece::Kind::Literal;
  p.literal = std::move(s);
  return p;
}

struct Cut {
  RuleMatch match;
  std::vector<Fragment> steps;
};

// Read-only view of one fragment against the tree.
class View {
 public:
  View(const DepTree& tree, const Fragment& f) : tree_(tree), f_(f) {
    for (const auto& p : f)
      if (p.kind == Piece::Kind::Token) present_.insert({p.sentence, p.token});
  }

  const Fragment& frag() const { return f_; }
  size_t size() const { return f_.size(); }
  const DepToken& tok(int s, int id) const { return tree_.sentences.at(s).at(id); }
  bool has(int s, int id) const { return present_.contains({s, id}); }

  std::set<int> sentences() const {
    std::set<int> out;
    for (const auto& p : f_)
      if (p.kind == Piece::Kind::Token) out.insert(p.sentence);
    return out;
  }

  // Children present in the fragment, in sentence order.
  std::vector<int> kids(int s, int id, std::string_view deprel = {}) const {
    std::vector<int> out;
    for (int c : tree_.sentences.at(s).children(id))
      if (has(s, c) && (deprel.empty() || tok(s, c).deprel == deprel)) out.push_back(c);
    return out;
  }

  std::optional<int> kid(int s, int id, std::string_view deprel) const {
    auto k = kids(s, id, deprel);
    if (k.empty()) return std::nullopt;
    return k.front();
  }

  // No present head above it.
  bool is_top(int s, int id) const {
    int h = tok(s, id).head;
    return h == 0 || !has(s, h);
  }

  Mask none() const { return Mask(f_.size(), 0); }
  Mask all() const { return Mask(f_.size(), 1); }

  // Pieces hanging under `x` through present tokens; refs count where the
  // subtree they replaced was attached.
  Mask sub(int s, int x) const {
    Mask m = none();
    for (size_t i = 0; i < f_.size(); ++i) {
      const auto& p = f_[i];
      if (p.kind == Piece::Kind::Literal || p.token == 0 || p.sentence != s) continue;
      int cur = p.token;
      if (cur == x) {
        m[i] = 1;
        continue;
      }
      for (cur = tok(s, cur).head; cur != 0; cur = tok(s, cur).head) {
        if (cur == x) {
          m[i] = 1;
          break;
        }
        if (!has(s, cur)) break;
      }
    }
    return m;
  }

  Mask tokens(int s, std::initializer_list<int> ids) const {
    Mask m = none();
    for (size_t i = 0; i < f_.size(); ++i)
      if (f_[i].kind == Piece::Kind::Token && f_[i].sentence == s &&
          std::find(ids.begin(), ids.end(), f_[i].token) != ids.end())
        m[i] = 1;
    return m;
  }

  Mask sentence(int s) const {
    Mask m = none();
    for (size_t i = 0; i < f_.size(); ++i)
      if (f_[i].kind != Piece::Kind::Literal && f_[i].sentence == s) m[i] = 1;
    return m;
  }

  Fragment take(const Mask& m) const {
    Fragment out;
    for (size_t i = 0; i < f_.size(); ++i)
      if (m[i]) out.push_back(f_[i]);
    return out;
  }

  // Pieces in `keep`, with the `span` pieces collapsed into `ref`.
  Fragment replace(const Mask& keep, const Mask& span, const Piece& ref) const {
    Fragment out;
    bool placed = false;
    for (size_t i = 0; i < f_.size(); ++i) {
      if (span[i]) {
        if (!placed) out.push_back(ref);
        placed = true;
      } else if (keep[i]) {
        out.push_back(f_[i]);
      }
    }
    return out;
  }

  bool visible(const Piece& p) const {
    return p.kind != Piece::Kind::Token || !hidden(tok(p.sentence, p.token));
  }

  // Final step standing for the whole fragment, with the site folded into
  // the last new step. Empty when nothing but the reference would remain.
  Fragment frame(const Mask& site, int last, int s, int anchor) const {
    auto fr = replace(all(), site, local_ref(last, s, anchor));
    auto first = std::find_if(fr.begin(), fr.end(), [&](const Piece& p) { return visible(p); });
    while (first != fr.end() && first->kind == Piece::Kind::Token &&
           tok(first->sentence, first->token).deprel == "det") {
      first = fr.erase(first);
      first = std::find_if(first, fr.end(), [&](const Piece& p) { return visible(p); });
    }
    bool trivial = true;
    for (const auto& p : fr) {
      if (p.kind == Piece::Kind::Ref && p.ref == -(last + 1)) continue;
      if (!visible(p)) continue;
      if (p.kind != Piece::Kind::Token) {
        trivial = false;
        break;
      }
      const auto& t = tok(p.sentence, p.token);
      if (!(is_wh(t) || t.lemma == "be" || t.deprel == "det")) {
        trivial = false;
        break;
      }
    }
    if (trivial) return {};
    return fr;
  }

  template <class F>
  std::optional<Cut> each_token(F&& fn) const {
    for (const auto& p : f_) {
      if (p.kind != Piece::Kind::Token) continue;
      if (auto r = fn(p.sentence, p.token)) return r;
    }
    return std::nullopt;
  }

  const DepTree& tree() const { return tree_; }

 private:
  const DepTree& tree_;
  const Fragment& f_;
  std::set<std::pair<int, int>> present_;
};

Mask operator-(Mask a, const Mask& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] = a[i] && !b[i];
  return a;
}

Mask operator|(Mask a, const Mask& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
  return a;
}

bool any(const Mask& m) { return std::find(m.begin(), m.end(), 1) != m.end(); }

Mask det_kids(const View& v, int s, int n, bool wh_only) {
  Mask m = v.none();
  for (int d : v.kids(s, n, "det"))
    if (!wh_only || is_wh(v.tok(s, d))) m = m | v.tokens(s, {d});
  return m;
}

Cut make(Rule r, const View& v, int s, int t, std::vector<Fragment> steps, std::string site = {}) {
  if (site.empty()) site = v.tok(s, t).form;
  return {{r, s, t, std::move(site)}, std::move(steps)};
}

std::optional<Cut> be_root(const View& v) {
  return v.each_token([&](int s, int t) -> std::optional<Cut> {
    const auto& root = v.tok(s, t);
    if (!v.is_top(s, t) || root.lemma != "be") return std::nullopt;
    auto subj = v.kid(s, t, "nsubj");
    if (!subj || is_wh(v.tok(s, *subj))) return std::nullopt;
    bool comp = false;
    for (int c : v.kids(s, t))
      if ((v.tok(s, c).deprel == "acomp" || v.tok(s, c).deprel == "attr") && !is_wh(v.tok(s, c))) comp = true;
    if (!comp) return std::nullopt;
    Mask a = v.sub(s, *subj);
    for (size_t i = 0; i < v.size(); ++i) {
      const auto& p = v.frag()[i];
      if (!a[i] || p.kind != Piece::Kind::Token) continue;
      const auto& w = v.tok(s, p.token);
      bool how = w.lemma == "how";
      bool many = (w.lemma == "many" || w.lemma == "much") &&
                  std::ranges::any_of(v.kids(s, p.token), [&](int c) { return v.tok(s, c).lemma == "how"; });
      if (how || many) a[i] = 0;
    }
    if (!any(a)) return std::nullopt;
    return make(Rule::BeRoot, v, s, t,
                {v.take(a), v.replace(v.all() - v.tokens(s, {t}), a, local_ref(0, s, *subj))});
  });
}

std::optional<Cut> be_auxpass(const View& v) {
  return v.each_token([&](int s, int t) -> std::optional<Cut> {
    const auto& aux = v.tok(s, t);
    if (aux.deprel != "auxpass" || aux.lemma != "be" || !v.has(s, aux.head)) return std::nullopt;
    auto agent = v.kid(s, aux.head, "agent");
    if (!agent) return std::nullopt;
    auto obj = v.kid(s, *agent, "pobj");
    if (!obj) return std::nullopt;
    Mask o = v.sub(s, *obj);
    return make(Rule::BeAuxpass, v, s, t,
                {v.take(o), v.replace(v.all() - v.tokens(s, {t}), o, local_ref(0, s, *obj))});
  });
}

std::optional<Cut> do_subj(const View& v) {
  return v.each_token([&](int s, int t) -> std::optional<Cut> {
    if (!v.is_top(s, t) || !is_verb(v.tok(s, t))) return std::nullopt;
    std::optional<int> aux;
    for (int c : v.kids(s, t, "aux"))
      if (v.tok(s, c).lemma == "do") aux = c;
    auto subj = v.kid(s, t, "nsubj");
    if (!aux || !subj || !is_noun(v.tok(s, *subj))) return std::nullopt;
    Mask sj = v.sub(s, *subj);
    return make(Rule::DoSubj, v, s, t,
                {v.take(sj - det_kids(v, s, *subj, false)), v.replace(v.all(), sj, local_ref(0, s, *subj))},
                v.tok(s, *aux).form);
  });
}

std::optional<Cut> subj_do_have(const View& v) {
  return v.each_token([&](int s, int t) -> std::optional<Cut> {
    const auto& root = v.tok(s, t);
    if (!v.is_top(s, t) || !is_verb(root) || (root.lemma != "have" && root.lemma != "do")) return std::nullopt;
    auto subj = v.kid(s, t, "nsubj");
    if (!subj) return std::nullopt;
    auto mod = v.kid(s, *subj, "acl");
    if (!mod) mod = v.kid(s, *subj, "relcl");
    if (!mod) return std::nullopt;
    Mask first = v.sub(s, *subj) - det_kids(v, s, *subj, true) - v.sub(s, *mod);
    for (int c : v.kids(s, t)) {
      const auto& w = v.tok(s, c);
      if (c == *subj || w.deprel == "aux" || hidden(w)) continue;
      first = first | v.sub(s, c);
    }
    Fragment second{local_ref(0, s, *subj)};
    for (auto& p : v.take(v.sub(s, *mod))) second.push_back(p);
    return make(Rule::SubjDoHave, v, s, t, {v.take(first), second});
  });
}

std::optional<Cut> conjunction(const View& v) {
  return v.each_token([&](int s, int t) -> std::optional<Cut> {
    if (!v.is_top(s, t) || !is_verb(v.tok(s, t))) return std::nullopt;
    std::optional<int> conj;
    for (int c : v.kids(s, t, "conj"))
      if (is_verb(v.tok(s, c)) && !conj) conj = c;
    auto subj = v.kid(s, t, "nsubj");
    if (!conj || !subj) return std::nullopt;
    Mask cc = v.none();
    for (int c : v.kids(s, t, "cc")) cc = cc | v.tokens(s, {c});
    Fragment second{local_ref(0, s, *subj)};
    for (auto& p : v.take(v.sub(s, t) - v.sub(s, *subj) - v.sub(s, *conj) - cc)) second.push_back(p);
    auto ccs = v.kids(s, t, "cc");
    return make(Rule::Conjunction, v, s, ccs.empty() ? *conj : ccs.front(),
                {v.take(v.sub(s, *subj) | v.sub(s, *conj)), second});
  });
}

std::optional<Cut> how_many(const View& v) {
  return v.each_token([&](int s, int t) -> std::optional<Cut> {
    const auto& how = v.tok(s, t);
    if (how.lemma != "how" || !v.has(s, how.head)) return std::nullopt;
    const auto& many = v.tok(s, how.head);
    if ((many.lemma != "many" && many.lemma != "much") || !v.has(s, many.head)) return std::nullopt;
    if (!is_noun(v.tok(s, many.head))) return std::nullopt;
    Fragment second{literal("the number of"), local_ref(0, s, 0)};
    return make(Rule::HowMany, v, s, t, {v.take(v.all() - v.tokens(s, {t, how.head})), second},
                how.form + " " + many.form);
  });
}

std::optional<Cut> single_prep(const View& v) {
  return v.each_token([&](int s, int t) -> std::optional<Cut> {
    if (!is_noun(v.tok(s, t))) return std::nullopt;
    auto preps = v.kids(s, t, "prep");
    if (preps.size() != 1 || v.tok(s, preps[0]).lemma != "of") return std::nullopt;
    auto obj = v.kid(s, preps[0], "pobj");
    if (!obj) return std::nullopt;
    Mask o = v.sub(s, *obj);
    auto fr = v.frame(o, 0, s, *obj);
    if (fr.empty()) return std::nullopt;
    return make(Rule::SinglePrep, v, s, preps[0], {v.take(o), fr});
  });
}

std::optional<Cut> multi_prep(const View& v) {
  return v.each_token([&](int s, int t) -> std::optional<Cut> {
    if (!is_noun(v.tok(s, t))) return std::nullopt;
    std::vector<int> preps;
    for (int p : v.kids(s, t, "prep"))
      if (v.kid(s, p, "pobj")) preps.push_back(p);
    if (preps.size() < 2) return std::nullopt;
    Mask head = v.sub(s, t) - det_kids(v, s, t, true);
    for (int p : preps) head = head - v.sub(s, p);
    std::vector<Fragment> steps{v.take(head)};
    std::vector<std::string> site;
    for (int p : preps) {
      Fragment step{local_ref(static_cast<int>(steps.size()) - 1, s, t)};
      for (auto& q : v.take(v.sub(s, p))) step.push_back(q);
      steps.push_back(step);
      site.push_back(v.tok(s, p).form);
    }
    auto fr = v.frame(v.sub(s, t), static_cast<int>(steps.size()) - 1, s, t);
    if (!fr.empty()) steps.push_back(fr);
    return make(Rule::MultiPrep, v, s, preps[0], steps, text::join(site, " "));
  });
}

// Noun `t` split off a modifier `mod` as "t" then "#1 mod", framed.
std::optional<Cut> split_modifier(Rule r, const View& v, int s, int t, int mod, int trigger) {
  Fragment second{local_ref(0, s, t)};
  for (auto& p : v.take(v.sub(s, mod))) second.push_back(p);
  std::vector<Fragment> steps{v.take(v.sub(s, t) - v.sub(s, mod)), second};
  auto fr = v.frame(v.sub(s, t), 1, s, t);
  if (!fr.empty()) steps.push_back(fr);
  return make(r, v, s, trigger, steps);
}

std::optional<Cut> relcl(const View& v) {
  static const std::set<std::string, std::less<>> args = {"dobj", "nsubj", "nsubjpass", "attr"};
  return v.each_token([&](int s, int t) -> std::optional<Cut> {
    const auto& n = v.tok(s, t);
    if (!is_noun(n) || !args.contains(n.deprel) || !v.has(s, n.head) || !is_verb(v.tok(s, n.head)))
      return std::nullopt;
    auto rc = v.kid(s, t, "relcl");
    if (!rc) return std::nullopt;
    Mask m = v.sub(s, *rc);
    int first = *rc;
    for (size_t i = 0; i < v.size(); ++i)
      if (m[i] && v.frag()[i].kind == Piece::Kind::Token) {
        first = v.frag()[i].token;
        break;
      }
    return split_modifier(Rule::Relcl, v, s, t, *rc, first);
  });
}

std::optional<Cut> superlative(const View& v) {
  return v.each_token([&](int s, int t) -> std::optional<Cut> {
    const auto& j = v.tok(s, t);
    if (j.pos != "JJS" || j.deprel != "amod" || !v.has(s, j.head)) return std::nullopt;
    int n = j.head;
    if (!is_noun(v.tok(s, n))) return std::nullopt;
    int up = v.tok(s, n).head;
    if (!v.is_top(s, n) && !(v.has(s, up) && v.is_top(s, up))) return std::nullopt;
    Fragment second{literal("the")};
    second.push_back(v.take(v.tokens(s, {t})).front());
    second.push_back(local_ref(0, s, n));
    std::vector<Fragment> steps{v.take(v.sub(s, n) - det_kids(v, s, n, false) - v.tokens(s, {t})), second};
    auto fr = v.frame(v.sub(s, n), 1, s, n);
    if (!fr.empty()) steps.push_back(fr);
    return make(Rule::Superlative, v, s, t, steps);
  });
}

std::optional<Cut> acl_verb(const View& v) {
  return v.each_token([&](int s, int t) -> std::optional<Cut> {
    if (!is_noun(v.tok(s, t))) return std::nullopt;
    for (int a : v.kids(s, t, "acl"))
      if (v.tok(s, a).pos == "VBG" && v.kid(s, a, "prep")) return split_modifier(Rule::AclVerb, v, s, t, a, a);
    return std::nullopt;
  });
}

int span_head(const DepSentence& sent, const Span& sp) {
  for (int i = sp.start; i <= sp.end; ++i) {
    int h = sent.at(i).head;
    if (h < sp.start || h > sp.end) return i;
  }
  return sp.start;
}

std::optional<Cut> sent_coref(const View& v) {
  auto sents = v.sentences();
  if (sents.size() != 2) return std::nullopt;
  for (const auto& link : v.tree().coref) {
    const auto& a = link.antecedent;
    const auto& m = link.mention;
    if (a.sentence >= m.sentence || !sents.contains(a.sentence) || !sents.contains(m.sentence)) continue;
    bool whole = true;
    for (const auto* sp : {&a, &m})
      for (int i = sp->start; i <= sp->end; ++i) whole = whole && v.has(sp->sentence, i);
    if (!whole) continue;
    int ha = span_head(v.tree().sentences[a.sentence], a);
    int hm = span_head(v.tree().sentences[m.sentence], m);
    Mask mention = v.none();
    for (int i = m.start; i <= m.end; ++i) mention = mention | v.tokens(m.sentence, {i});
    std::vector<std::string> site;
    for (int i = a.start; i <= a.end; ++i) site.push_back(v.tok(a.sentence, i).form);
    return make(Rule::SentCoref, v, a.sentence, ha,
                {v.take(v.sub(a.sentence, ha)),
                 v.replace(v.sentence(m.sentence), mention, local_ref(0, m.sentence, hm))},
                text::join(site, " "));
  }
  return std::nullopt;
}

using RuleFn = std::optional<Cut> (*)(const View&);

constexpr std::array<RuleFn, 12> kRuleFns = {be_root,  be_auxpass, do_subj,  subj_do_have,
                                             conjunction, how_many, single_prep, multi_prep,
                                             relcl,    superlative, acl_verb, sent_coref};

// Multi-sentence questions are joined through coreference before anything
// else splits them.
std::optional<Cut> find_split(const DepTree& tree, const Fragment& f) {
  View v(tree, f);
  if (v.sentences().size() > 1)
    if (auto r = sent_coref(v)) return r;
  for (size_t i = 0; i + 1 < kRuleFns.size(); ++i)
    if (auto r = kRuleFns[i](v)) {
      if (r->steps.size() >= 2) return r;
    }
  return std::nullopt;
}

Fragment whole(const DepTree& tree) {
  Fragment f;
  for (size_t s = 0; s < tree.sentences.size(); ++s)
    for (const auto& t : tree.sentences[s].tokens) {
      Piece p;
      p.sentence = static_cast<int>(s);
      p.token = t.id;
      f.push_back(p);
    }
  return f;
}

}  // namespace

std::string_view to_string(Rule r) { return kRuleNames.at(static_cast<size_t>(r)); }

Rule rule_from_string(std::string_view name) {
  for (size_t i = 0; i < kRuleNames.size(); ++i)
    if (kRuleNames[i] == name) return static_cast<Rule>(i);
  throw Error("UnknownRule", "unknown rule '" + std::string(name) + "'");
}

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = [] {
    std::vector<Rule> out;
    for (size_t i = 0; i < kRuleNames.size(); ++i) out.push_back(static_cast<Rule>(i));
    return out;
  }();
  return rules;
}

std::optional<RuleMatch> match_fragment(const DepTree& tree, const Fragment& f) {
  if (auto r = find_split(tree, f)) return r->match;
  return std::nullopt;
}

std::optional<RuleMatch> match_rule(const DepTree& tree) { return match_fragment(tree, whole(tree)); }

std::string render(const DepTree& tree, const Fragment& f) {
  std::vector<std::string> out;
  for (const auto& p : f) {
    switch (p.kind) {
      case Piece::Kind::Literal:
        out.push_back(p.literal);
        break;
      case Piece::Kind::Ref:
        out.push_back("#" + std::to_string(p.ref));
        break;
      case Piece::Kind::Token: {
        const auto& t = tree.sentences.at(p.sentence).at(p.token);
        if (hidden(t)) break;
        // sentence-initial common nouns are capitalized only by position
        bool lower = t.id == 1 && (t.pos == "NN" || t.pos == "NNS");
        out.push_back(lower ? text::to_lower(t.form) : t.form);
        break;
      }
    }
  }
  return text::join(out, " ");
}

std::vector<Fragment> decompose_fragments(const DepTree& tree, int limit) {
  tree.validate();
  std::vector<Fragment> steps{whole(tree)};
  int splits = 0;
  size_t i = 0;
  while (i < steps.size()) {
    auto split = find_split(tree, steps[i]);
    if (!split) {
      ++i;
      continue;
    }
    if (++splits > limit)
      throw Error("RecursionLimit", "no fixpoint after " + std::to_string(limit) + " splits");
    int at = static_cast<int>(i) + 1;  // step number being replaced
    int m = static_cast<int>(split->steps.size());
    for (auto& step : split->steps)
      for (auto& p : step)
        if (p.kind == Piece::Kind::Ref && p.ref < 0) p.ref = at - p.ref - 1;
    for (size_t j = i + 1; j < steps.size(); ++j)
      for (auto& p : steps[j])
        if (p.kind == Piece::Kind::Ref && p.ref >= at) p.ref += m - 1;
    steps.erase(steps.begin() + static_cast<long>(i));
    steps.insert(steps.begin() + static_cast<long>(i), split->steps.begin(), split->steps.end());
  }
  return steps;
}

std::vector<std::string> decompose_steps(const DepTree& tree, int limit) {
  std::vector<std::string> out;
  for (const auto& f : decompose_fragments(tree, limit)) out.push_back(render(tree, f));
  return out;
}

Qdmr decompose(const DepTree& tree, int limit) {
  return parse_qdmr(text::join(decompose_steps(tree, limit), " ;"));
}

}  // namespace qdmr
