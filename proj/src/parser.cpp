#include "tempobridge/parser.hpp"

#include <cctype>
#include <utility>

namespace tempobridge {

namespace {

enum class Tok {
  End, True, Tau, E, A, U, W, X, Ax, XIdent, AxIdent, XBrace,
  Ident, Bang, Amp, LParen, RParen, LBrack, RBrack, LBrace, RBrace
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // ident payload
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  [[nodiscard]] const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  [[nodiscard]] bool try_alias(std::string_view alias, Tok kind) {
    if (text_.substr(pos_).substr(0, alias.size()) != alias) return false;
    tok_ = {kind, {}, {pos_, pos_ + alias.size()}};
    pos_ += alias.size();
    return true;
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Tok::End, {}, {text_.size(), text_.size()}};
      return;
    }
    // Unicode aliases (input only).
    if (try_alias("\xC2\xAC", Tok::Bang)) return;          // negation sign
    if (try_alias("\xE2\x88\xA7", Tok::Amp)) return;       // conjunction sign
    if (try_alias("\xE2\x88\x83", Tok::E)) return;         // existential sign
    if (try_alias("\xE2\x88\x80", Tok::A)) return;         // universal sign
    if (try_alias("\xCF\x84", Tok::Tau)) return;           // silent-label sign

    const std::size_t start = pos_;
    const char c = text_[pos_];
    auto single = [&](Tok k) {
      tok_ = {k, {}, {start, start + 1}};
      ++pos_;
    };
    switch (c) {
      case '!': single(Tok::Bang); return;
      case '&': single(Tok::Amp); return;
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case '[': single(Tok::LBrack); return;
      case ']': single(Tok::RBrack); return;
      case '{': single(Tok::LBrace); return;
      case '}': single(Tok::RBrace); return;
      default: break;
    }
    if (!word_char(c))
      throw ParseError("unexpected character", {start, start + 1});
    while (pos_ < text_.size() && word_char(text_[pos_])) ++pos_;
    std::string word(text_.substr(start, pos_ - start));
    const SourceSpan span{start, pos_};
    if (word == "true") { tok_ = {Tok::True, {}, span}; return; }
    if (word == "tau") { tok_ = {Tok::Tau, {}, span}; return; }
    if (word == "E") { tok_ = {Tok::E, {}, span}; return; }
    if (word == "A") { tok_ = {Tok::A, {}, span}; return; }
    if (word == "U") { tok_ = {Tok::U, {}, span}; return; }
    if (word == "W") { tok_ = {Tok::W, {}, span}; return; }
    if (word == "X") { tok_ = {Tok::X, {}, span}; return; }
    if (word == "AX") { tok_ = {Tok::Ax, {}, span}; return; }
    if (word.rfind("AX_", 0) == 0) {
      if (word.size() == 3) throw ParseError("expected action name after AX_", span);
      tok_ = {Tok::AxIdent, word.substr(3), span};
      return;
    }
    if (word.rfind("X_", 0) == 0) {
      if (word.size() == 2) {
        if (pos_ < text_.size() && text_[pos_] == '{') {
          ++pos_;
          tok_ = {Tok::XBrace, {}, {start, pos_}};
          return;
        }
        throw ParseError("expected action name or constraint after X_", span);
      }
      tok_ = {Tok::XIdent, word.substr(2), span};
      return;
    }
    tok_ = {Tok::Ident, std::move(word), span};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  StatePtr parse_state_top() {
    StatePtr f = parse_state_expr();
    expect(Tok::End, "unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lex_.peek().span);
  }

  Token expect(Tok kind, const char* msg) {
    if (lex_.peek().kind != kind) fail(msg);
    return lex_.take();
  }

  StatePtr parse_state_expr() {
    StatePtr f = parse_state_unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      f = mk_and(std::move(f), parse_state_unary());
    }
    return f;
  }

  StatePtr parse_state_unary() {
    switch (lex_.peek().kind) {
      case Tok::Bang:
        lex_.take();
        return mk_not(parse_state_unary());
      case Tok::E:
        lex_.take();
        return mk_exists(parse_path_unary());
      case Tok::A:
        lex_.take();
        return forall(parse_path_unary());
      case Tok::Ax:
        lex_.take();
        return mk_ax(parse_state_unary());
      case Tok::AxIdent: {
        Token t = lex_.take();
        return mk_axact(t.text, parse_state_unary());
      }
      case Tok::True:
        lex_.take();
        return mk_true();
      case Tok::Ident:
        return mk_prop(lex_.take().text);
      case Tok::LParen: {
        lex_.take();
        StatePtr f = parse_state_expr();
        expect(Tok::RParen, "expected ')'");
        return f;
      }
      default:
        fail("expected a state formula");
    }
  }

  // State-material path formulas fold into one embedded state formula, so
  // "!p" in path position is the embedded state negation.
  static PathPtr norm(PathPtr p) {
    if (state_expressible(p) && p->kind != PathKind::Embed)
      return mk_embed(fold_state(p));
    return p;
  }

  PathPtr parse_path_expr() {
    PathPtr p = parse_path_unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      p = norm(mk_andp(std::move(p), parse_path_unary()));
    }
    return p;
  }

  PathPtr parse_path_unary() {
    switch (lex_.peek().kind) {
      case Tok::Bang:
        lex_.take();
        return norm(mk_notp(parse_path_unary()));
      case Tok::X:
        lex_.take();
        return mk_x(parse_path_unary());
      case Tok::XIdent: {
        Token t = lex_.take();
        return mk_xact(t.text, parse_path_unary());
      }
      case Tok::XBrace: {
        lex_.take();
        ActPtr chi = parse_act_expr();
        expect(Tok::RBrace, "expected '}'");
        return mk_xchi(std::move(chi), parse_state_unary());
      }
      case Tok::LBrack:
        return parse_bracket();
      case Tok::LParen: {
        lex_.take();
        PathPtr p = parse_path_expr();
        expect(Tok::RParen, "expected ')'");
        return p;
      }
      case Tok::True:
      case Tok::Ident:
      case Tok::E:
      case Tok::A:
      case Tok::Ax:
      case Tok::AxIdent:
        return mk_embed(parse_state_unary());
      default:
        fail("expected a path formula");
    }
  }

  PathPtr parse_bracket() {
    expect(Tok::LBrack, "expected '['");
    PathPtr first = parse_path_expr();
    switch (lex_.peek().kind) {
      case Tok::U:
      case Tok::W: {
        const bool weak = lex_.take().kind == Tok::W;
        PathPtr second = parse_path_expr();
        expect(Tok::RBrack, "expected ']'");
        return weak ? mk_w(std::move(first), std::move(second))
                    : mk_u(std::move(first), std::move(second));
      }
      case Tok::LBrace: {
        if (!state_expressible(first))
          fail("constrained until takes state operands");
        StatePtr phi = fold_state(first);
        lex_.take();
        ActPtr chi = parse_act_expr();
        expect(Tok::RBrace, "expected '}'");
        bool weak = false;
        if (lex_.peek().kind == Tok::W) weak = true;
        else if (lex_.peek().kind != Tok::U) fail("expected 'U' or 'W'");
        lex_.take();
        expect(Tok::LBrace, "expected '{'");
        ActPtr chi2 = parse_act_expr();
        expect(Tok::RBrace, "expected '}'");
        PathPtr second = parse_path_expr();
        if (!state_expressible(second))
          fail("constrained until takes state operands");
        StatePtr phi2 = fold_state(second);
        expect(Tok::RBrack, "expected ']'");
        return weak ? mk_wchi(std::move(phi), std::move(chi), std::move(chi2), std::move(phi2))
                    : mk_uchi(std::move(phi), std::move(chi), std::move(chi2), std::move(phi2));
      }
      default:
        fail("expected 'U', 'W', or a '{constraint}'");
    }
  }

  ActPtr parse_act_expr() {
    ActPtr a = parse_act_unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      a = mk_anda(std::move(a), parse_act_unary());
    }
    return a;
  }

  ActPtr parse_act_unary() {
    switch (lex_.peek().kind) {
      case Tok::Bang:
        lex_.take();
        return mk_nota(parse_act_unary());
      case Tok::Tau:
        lex_.take();
        return mk_tau();
      case Tok::Ident:
        return mk_act(lex_.take().text);
      case Tok::LParen: {
        lex_.take();
        ActPtr a = parse_act_expr();
        expect(Tok::RParen, "expected ')'");
        return a;
      }
      default:
        fail("expected an action formula");
    }
  }

  Lexer lex_;
};

}  // namespace

StatePtr parse_formula(std::string_view text, LogicId logic) {
  Parser parser(text);
  StatePtr f = parser.parse_state_top();
  auto violations = conforms(f, logic);
  if (!violations.empty())
    throw ParseError("not in the " + to_string(logic) + " grammar: " + violations.front(),
                     {0, text.size()});
  return f;
}

std::string render_act(const ActPtr& a) {
  switch (a->kind) {
    case ActKind::Tau: return "tau";
    case ActKind::Act: return a->name;
    case ActKind::NotA: return "!" + render_act(a->a);
    case ActKind::AndA: return "(" + render_act(a->a) + " & " + render_act(a->b) + ")";
  }
  return "?";
}

std::string render_path(const PathPtr& p) {
  switch (p->kind) {
    case PathKind::Embed: return render_formula(p->phi);
    case PathKind::NotP: return "!" + render_path(p->p);
    case PathKind::AndP: return "(" + render_path(p->p) + " & " + render_path(p->q) + ")";
    case PathKind::X: return "X " + render_path(p->p);
    case PathKind::Xact: return "X_" + p->act + " " + render_path(p->p);
    case PathKind::U: return "[" + render_path(p->p) + " U " + render_path(p->q) + "]";
    case PathKind::W: return "[" + render_path(p->p) + " W " + render_path(p->q) + "]";
    case PathKind::Xchi:
      return "X_{" + render_act(p->chi) + "} " + render_formula(p->phi);
    case PathKind::Uchi:
    case PathKind::Wchi:
      return "[" + render_formula(p->phi) + " {" + render_act(p->chi) + "}" +
             (p->kind == PathKind::Uchi ? "U" : "W") + "{" + render_act(p->chi2) +
             "} " + render_formula(p->phi2) + "]";
  }
  return "?";
}

std::string render_formula(const StatePtr& f) {
  switch (f->kind) {
    case StateKind::True: return "true";
    case StateKind::Prop: return f->name;
    case StateKind::Not: return "!" + render_formula(f->a);
    case StateKind::And:
      return "(" + render_formula(f->a) + " & " + render_formula(f->b) + ")";
    case StateKind::Exists: {
      std::string body = render_path(f->path);
      return body.front() == '[' ? "E" + body : "E " + body;
    }
    case StateKind::Ax: return "AX " + render_formula(f->a);
    case StateKind::AxAct: return "AX_" + f->name + " " + render_formula(f->a);
  }
  return "?";
}

}  // namespace tempobridge
