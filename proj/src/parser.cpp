#include "gca/parser.hpp"

#include <cctype>
#include <cstdint>
#include <optional>

namespace gca {
namespace {

struct Token {
  enum class Kind { Word, Number, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  std::uint64_t value = 0;
  int line = 0, col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        linestart_ = pos_;
        // newline acts as a statement separator
        tok_ = {Token::Kind::Sym, ";", 0, line_ - 1, 1};
        return;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) {
      tok_ = {Token::Kind::End, "", 0, line_, col()};
      return;
    }
    char c = text_[pos_];
    int l = line_, co = col();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t s = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_' || text_[pos_] == '.'))
        ++pos_;
      tok_ = {Token::Kind::Word, text_.substr(s, pos_ - s), 0, l, co};
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      std::size_t s = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
        ++pos_;
      }
      tok_ = {Token::Kind::Number, text_.substr(s, pos_ - s), v, l, co};
    } else {
      ++pos_;
      tok_ = {Token::Kind::Sym, std::string(1, c), 0, l, co};
    }
  }

  int col() const { return static_cast<int>(pos_ - linestart_) + 1; }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t linestart_ = 0;
  int line_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ParseResult run() {
    while (lex_.peek().kind != Token::Kind::End) {
      if (is_sym(";")) {
        lex_.take();
        continue;
      }
      statement();
    }
    if (result_.ok()) {
      auto post = validate(result_.graph);
      result_.diagnostics.insert(result_.diagnostics.end(), post.begin(),
                                 post.end());
    }
    return std::move(result_);
  }

 private:
  bool is_sym(const char* s) const {
    return lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == s;
  }

  void error(const Token& at, const std::string& msg) {
    result_.diagnostics.push_back({at.line, at.col, msg});
    skip_statement();
  }

  void skip_statement() {
    while (lex_.peek().kind != Token::Kind::End && !is_sym(";")) lex_.take();
  }

  std::optional<std::string> word(const char* what) {
    if (lex_.peek().kind != Token::Kind::Word) {
      error(lex_.peek(), std::string("expected ") + what);
      return std::nullopt;
    }
    return lex_.take().text;
  }

  bool expect_sym(const char* s) {
    if (!is_sym(s)) {
      error(lex_.peek(), std::string("expected '") + s + "'");
      return false;
    }
    lex_.take();
    return true;
  }

  void statement() {
    Token head = lex_.peek();
    auto kw = word("directive (vertex, edge, fan, tail)");
    if (!kw) return;
    if (*kw == "vertex")
      vertex_stmt();
    else if (*kw == "edge")
      edge_stmt();
    else if (*kw == "fan")
      fan_stmt();
    else if (*kw == "tail")
      tail_stmt();
    else
      error(head, "unknown directive '" + *kw + "'");
  }

  void vertex_stmt() {
    auto name = word("vertex name");
    if (!name) return;
    result_.graph.base.vertices.push_back(*name);
  }

  void edge_stmt() {
    auto src = word("edge origin");
    if (!src) return;
    auto dst = word("edge terminus");
    if (!dst) return;
    Multiplicity m = Multiplicity::fin(1);
    if (is_sym("*")) {
      Token star = lex_.take();
      if (lex_.peek().kind == Token::Kind::Number) {
        std::uint64_t n = lex_.take().value;
        if (n == 0) {
          error(star, "zero multiplicity");
          return;
        }
        m = Multiplicity::fin(n);
      } else if (lex_.peek().kind == Token::Kind::Word &&
                 lex_.peek().text == "w") {
        lex_.take();
        m = Multiplicity::inf();
      } else {
        error(lex_.peek(), "expected multiplicity after '*'");
        return;
      }
    }
    result_.graph.base.edges.push_back({*src, *dst, m});
  }

  // {V:N, V:N, ...}
  std::optional<std::vector<std::pair<std::string, std::uint64_t>>> exit_map() {
    std::vector<std::pair<std::string, std::uint64_t>> out;
    if (!expect_sym("{")) return std::nullopt;
    while (!is_sym("}")) {
      auto v = word("exit target");
      if (!v) return std::nullopt;
      if (!expect_sym(":")) return std::nullopt;
      if (lex_.peek().kind != Token::Kind::Number) {
        error(lex_.peek(), "expected exit multiplicity");
        return std::nullopt;
      }
      std::uint64_t n = lex_.take().value;
      out.push_back({*v, n});
      if (is_sym(",")) lex_.take();
    }
    lex_.take();  // '}'
    return out;
  }

  // (forward=N, exits={...}, attach=[{exits={...}} ...])
  std::optional<TailStep> step() {
    TailStep s;
    if (!expect_sym("(")) return std::nullopt;
    while (!is_sym(")")) {
      auto key = word("step field (forward, exits, attach)");
      if (!key) return std::nullopt;
      if (!expect_sym("=")) return std::nullopt;
      if (*key == "forward") {
        if (lex_.peek().kind != Token::Kind::Number) {
          error(lex_.peek(), "expected forward multiplicity");
          return std::nullopt;
        }
        s.forward = lex_.take().value;
      } else if (*key == "exits") {
        auto m = exit_map();
        if (!m) return std::nullopt;
        s.exits = std::move(*m);
      } else if (*key == "attach") {
        if (!expect_sym("[")) return std::nullopt;
        while (!is_sym("]")) {
          if (!expect_sym("{")) return std::nullopt;
          AttachedVertex av;
          if (!is_sym("}")) {
            auto k2 = word("attachment field (exits)");
            if (!k2) return std::nullopt;
            if (*k2 != "exits") {
              error(lex_.peek(), "unknown attachment field '" + *k2 + "'");
              return std::nullopt;
            }
            if (!expect_sym("=")) return std::nullopt;
            auto m = exit_map();
            if (!m) return std::nullopt;
            av.exits = std::move(*m);
          }
          if (!expect_sym("}")) return std::nullopt;
          s.attachments.push_back(std::move(av));
          if (is_sym(",")) lex_.take();
        }
        lex_.take();  // ']'
      } else {
        error(lex_.peek(), "unknown step field '" + *key + "'");
        return std::nullopt;
      }
      if (is_sym(",")) lex_.take();
    }
    lex_.take();  // ')'
    return s;
  }

  std::optional<std::vector<TailStep>> step_list() {
    std::vector<TailStep> out;
    if (!expect_sym("[")) return std::nullopt;
    while (!is_sym("]")) {
      auto s = step();
      if (!s) return std::nullopt;
      out.push_back(std::move(*s));
      if (is_sym(",")) lex_.take();
    }
    lex_.take();  // ']'
    return out;
  }

  void fan_stmt() {
    auto id = word("fan id");
    if (!id) return;
    Fan f;
    f.id = *id;
    bool have_emitter = false, have_body = false;
    while (lex_.peek().kind == Token::Kind::Word) {
      auto key = lex_.take();
      if (key.text == "sink") {
        have_body = true;
        continue;
      }
      if (!expect_sym("=")) return;
      if (key.text == "emitter") {
        auto v = word("emitter vertex");
        if (!v) return;
        f.emitter = *v;
        have_emitter = true;
      } else if (key.text == "exits") {
        auto m = exit_map();
        if (!m) return;
        f.exits = std::move(*m);
        have_body = true;
      } else {
        error(key, "unknown fan field '" + key.text + "'");
        return;
      }
    }
    if (!have_emitter) {
      error(lex_.peek(), "fan '" + f.id + "' is missing emitter=");
      return;
    }
    if (!have_body) {
      error(lex_.peek(),
            "fan '" + f.id + "' must declare either 'sink' or exits=");
      return;
    }
    result_.graph.fans.push_back(std::move(f));
  }

  void tail_stmt() {
    auto id = word("tail id");
    if (!id) return;
    Tail t;
    t.id = *id;
    bool have_origin = false, have_period = false;
    while (lex_.peek().kind == Token::Kind::Word) {
      auto key = lex_.take();
      if (!expect_sym("=")) return;
      if (key.text == "origin") {
        auto v = word("origin vertex");
        if (!v) return;
        t.origin = *v;
        have_origin = true;
      } else if (key.text == "preamble") {
        auto l = step_list();
        if (!l) return;
        t.preamble = std::move(*l);
      } else if (key.text == "period") {
        auto l = step_list();
        if (!l) return;
        t.period = std::move(*l);
        have_period = true;
      } else {
        error(key, "unknown tail field '" + key.text + "'");
        return;
      }
    }
    if (!have_origin) {
      error(lex_.peek(), "tail '" + t.id + "' is missing origin=");
      return;
    }
    if (!have_period) {
      error(lex_.peek(), "tail '" + t.id + "' is missing period=");
      return;
    }
    result_.graph.tails.push_back(std::move(t));
  }

  Lexer lex_;
  ParseResult result_;
};

}  // namespace

ParseResult parse_presentation(const std::string& text) {
  return Parser(text).run();
}

}  // namespace gca
