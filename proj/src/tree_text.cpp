#include "ballotree/tree_text.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ballotree {

namespace {

bool ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

bool valid_ident(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s.substr(1))
    if (!ident_char(c)) return false;
  return s != "def";
}

std::string leaf_text(const Label& l) {
  if (l.is_candidate()) return std::to_string(l.candidate_index());
  const std::string& name = l.variable_name();
  if (!valid_ident(name))
    throw format_error("variable name '" + name +
                       "' is not writable as tree text");
  return name;
}

// Emits the expression for `root`, printing any node present in `names`
// (other than the root itself) as its definition name.
void write_expr(VotingTree root,
                const std::unordered_map<std::uint32_t, std::string>& names,
                std::string& out) {
  enum class Tok { tree, space, close };
  struct Item {
    Tok tok;
    VotingTree t;
  };
  std::vector<Item> stack{{Tok::tree, root}};
  bool at_root = true;
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    if (item.tok == Tok::space) {
      out += ' ';
      continue;
    }
    if (item.tok == Tok::close) {
      out += ')';
      continue;
    }
    if (!at_root) {
      auto it = names.find(item.t.id());
      if (it != names.end()) {
        out += it->second;
        continue;
      }
    }
    at_root = false;
    if (item.t.is_leaf()) {
      out += leaf_text(item.t.label());
      continue;
    }
    out += '(';
    stack.push_back({Tok::close, {}});
    stack.push_back({Tok::tree, item.t.right()});
    stack.push_back({Tok::space, {}});
    stack.push_back({Tok::tree, item.t.left()});
  }
}

// Unique nodes reachable from root. The store hands out children before
// parents, so ascending id order is children-first.
std::vector<VotingTree> reachable_sorted(VotingTree root) {
  std::unordered_set<std::uint32_t> seen;
  std::vector<VotingTree> order;
  std::vector<VotingTree> stack{root};
  while (!stack.empty()) {
    VotingTree t = stack.back();
    stack.pop_back();
    if (!seen.insert(t.id()).second) continue;
    order.push_back(t);
    if (!t.is_leaf()) {
      stack.push_back(t.left());
      stack.push_back(t.right());
    }
  }
  std::sort(order.begin(), order.end(),
            [](VotingTree a, VotingTree b) { return a.id() < b.id(); });
  return order;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  VotingTree run() {
    for (;;) {
      skip_ws();
      if (at_end()) break;
      if (try_def()) continue;
      VotingTree tree = parse_expr();
      skip_ws();
      if (!at_end())
        throw parse_error("unexpected content after the result tree", pos_);
      return tree;
    }
    throw parse_error(defs_.empty() ? "empty input"
                                    : "definitions without a result tree",
                      pos_);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
        ++pos_;
      else
        break;
    }
  }

  std::string_view read_ident() {
    std::size_t start = pos_;
    while (!at_end() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  // Recognizes "(def name expr)" at the current position; on a match the
  // definition is recorded and true returned, otherwise the position is
  // restored untouched.
  bool try_def() {
    if (at_end() || text_[pos_] != '(') return false;
    std::size_t saved = pos_;
    ++pos_;
    skip_ws();
    if (at_end() || !ident_start(text_[pos_])) {
      pos_ = saved;
      return false;
    }
    if (read_ident() != "def") {
      pos_ = saved;
      return false;
    }
    skip_ws();
    std::size_t name_pos = pos_;
    if (at_end() || !ident_start(text_[pos_]))
      throw parse_error("expected a definition name", pos_);
    std::string name(read_ident());
    if (name == "def")
      throw parse_error("'def' is reserved", name_pos);
    if (defs_.count(name))
      throw parse_error("duplicate definition of '" + name + "'", name_pos);
    VotingTree body = parse_expr();
    skip_ws();
    if (at_end() || text_[pos_] != ')')
      throw parse_error("expected ')' closing the definition", pos_);
    ++pos_;
    defs_.emplace(std::move(name), body);
    return true;
  }

  VotingTree parse_atom() {
    std::size_t start = pos_;
    char c = text_[pos_];
    if (c >= '0' && c <= '9') {
      long value = 0;
      while (!at_end() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        value = value * 10 + (text_[pos_] - '0');
        if (value > 1'000'000'000)
          throw parse_error("candidate index out of range", start);
        ++pos_;
      }
      if (!at_end() && ident_char(text_[pos_]))
        throw parse_error("bad leaf token", start);
      return leaf(Candidate(value));
    }
    if (ident_start(c)) {
      std::string_view name = read_ident();
      if (name == "def") throw parse_error("'def' is reserved", start);
      auto it = defs_.find(std::string(name));
      if (it != defs_.end()) return it->second;
      return var_leaf(std::string(name));
    }
    throw parse_error(std::string("unexpected character '") + c + "'", pos_);
  }

  VotingTree parse_expr() {
    struct Frame {
      VotingTree left;
      bool have_left = false;
      std::size_t open_pos = 0;
    };
    std::vector<Frame> frames;
    for (;;) {
      skip_ws();
      if (at_end()) throw parse_error("unexpected end of input", pos_);
      char c = text_[pos_];
      if (c == '(') {
        frames.push_back({{}, false, pos_});
        ++pos_;
        continue;
      }
      if (c == ')')
        throw parse_error("internal nodes need exactly two children", pos_);
      VotingTree completed = parse_atom();
      for (;;) {
        if (frames.empty()) return completed;
        Frame& frame = frames.back();
        if (!frame.have_left) {
          frame.left = completed;
          frame.have_left = true;
          break;
        }
        skip_ws();
        if (at_end())
          throw parse_error("unexpected end of input", pos_);
        if (text_[pos_] != ')')
          throw parse_error("expected ')' after two children", pos_);
        ++pos_;
        completed = node(frame.left, completed);
        frames.pop_back();
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, VotingTree> defs_;
};

}  // namespace

std::string to_text(VotingTree t, std::uint64_t expand_limit) {
  if (t.leaf_count() > expand_limit)
    throw scale_error("tree expands to " + t.leaf_count().str() +
                      " leaves; use the definition form");
  std::string out;
  write_expr(t, {}, out);
  return out;
}

std::string to_text_shared(VotingTree t) {
  std::vector<VotingTree> order = reachable_sorted(t);
  std::unordered_map<std::uint32_t, int> refs;
  std::unordered_set<std::string> taken;
  for (VotingTree cur : order) {
    if (cur.is_leaf()) {
      Label l = cur.label();
      if (l.is_variable()) taken.insert(l.variable_name());
      continue;
    }
    ++refs[cur.left().id()];
    ++refs[cur.right().id()];
  }
  std::unordered_map<std::uint32_t, std::string> names;
  std::string out;
  int counter = 0;
  for (VotingTree cur : order) {
    if (cur.is_leaf() || refs[cur.id()] < 2) continue;
    std::string name;
    do {
      name = "t" + std::to_string(counter++);
    } while (taken.count(name));
    out += "(def " + name + " ";
    write_expr(cur, names, out);
    out += ")\n";
    names.emplace(cur.id(), name);
  }
  // the root itself may carry a name; print the reference if so
  auto it = names.find(t.id());
  if (it != names.end()) {
    out += it->second;
  } else {
    write_expr(t, names, out);
  }
  out += '\n';
  return out;
}

VotingTree parse_tree(std::string_view text) { return Parser(text).run(); }

}  // namespace ballotree
