#include "pgaram/sequence.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pgaram/errors.hpp"

namespace pgaram {

// ---------------------------------------------------------------------------
// BasicInstruction

BasicInstruction BasicInstruction::symbolic(SrramInstruction instruction) {
  BasicInstruction b;
  b.symbolic_ = std::move(instruction);
  return b;
}

BasicInstruction BasicInstruction::opaque(std::string name, StatePredicate p,
                                          StateTransformer q) {
  if (name.empty())
    throw std::invalid_argument("opaque instruction needs a name");
  BasicInstruction b;
  b.opaque_ = std::make_shared<const Opaque>(
      Opaque{std::move(name), std::move(p), std::move(q)});
  return b;
}

const std::string& BasicInstruction::name() const { return opaque_->name; }

StepResult BasicInstruction::execute(const MemoryState& state) const {
  if (symbolic_) return step(*symbolic_, state);
  return {opaque_->p(state), opaque_->q(state)};
}

std::string BasicInstruction::text() const {
  return symbolic_ ? symbolic_->text() : opaque_->name;
}

bool BasicInstruction::operator==(const BasicInstruction& other) const {
  if (is_symbolic() != other.is_symbolic()) return false;
  if (is_symbolic()) return *symbolic_ == *other.symbolic_;
  return opaque_->name == other.opaque_->name;
}

// ---------------------------------------------------------------------------
// PrimitiveInstruction

PrimitiveInstruction PrimitiveInstruction::plain(BasicInstruction basic) {
  PrimitiveInstruction u;
  u.kind_ = Kind::Plain;
  u.basic_ = std::move(basic);
  return u;
}

PrimitiveInstruction PrimitiveInstruction::pos_test(BasicInstruction basic) {
  PrimitiveInstruction u;
  u.kind_ = Kind::PosTest;
  u.basic_ = std::move(basic);
  return u;
}

PrimitiveInstruction PrimitiveInstruction::neg_test(BasicInstruction basic) {
  PrimitiveInstruction u;
  u.kind_ = Kind::NegTest;
  u.basic_ = std::move(basic);
  return u;
}

PrimitiveInstruction PrimitiveInstruction::jump(Nat offset) {
  PrimitiveInstruction u;
  u.kind_ = Kind::Jump;
  u.jump_ = std::move(offset);
  return u;
}

PrimitiveInstruction PrimitiveInstruction::halt() {
  return PrimitiveInstruction();
}

std::string PrimitiveInstruction::text() const {
  switch (kind_) {
    case Kind::Plain: return basic_->text();
    case Kind::PosTest: return "+" + basic_->text();
    case Kind::NegTest: return "-" + basic_->text();
    case Kind::Jump: return "#" + jump_.str();
    case Kind::Halt: return "!";
  }
  return {};
}

bool PrimitiveInstruction::operator==(const PrimitiveInstruction& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Jump: return jump_ == other.jump_;
    case Kind::Halt: return true;
    default: return *basic_ == *other.basic_;
  }
}

// ---------------------------------------------------------------------------
// InstructionSequence

InstructionSequence::InstructionSequence(
    std::vector<PrimitiveInstruction> prefix,
    std::vector<PrimitiveInstruction> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (prefix_.empty() && period_.empty())
    throw std::invalid_argument("instruction sequences are non-empty");
}

InstructionSequence InstructionSequence::finite(
    std::vector<PrimitiveInstruction> body) {
  return InstructionSequence(std::move(body), {});
}

InstructionSequence InstructionSequence::periodic(
    std::vector<PrimitiveInstruction> prefix,
    std::vector<PrimitiveInstruction> period) {
  return InstructionSequence(std::move(prefix), std::move(period));
}

std::optional<PrimitiveInstruction> InstructionSequence::at(
    std::size_t position) const {
  if (position < prefix_.size()) return prefix_[position];
  if (period_.empty()) return std::nullopt;
  return period_[(position - prefix_.size()) % period_.size()];
}

// ---------------------------------------------------------------------------
// Algebraic operations

namespace {

std::vector<PrimitiveInstruction> primitive_root(
    const std::vector<PrimitiveInstruction>& word) {
  const std::size_t n = word.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i)
      periodic = word[i] == word[i % d];
    if (periodic)
      return std::vector<PrimitiveInstruction>(word.begin(),
                                               word.begin() + d);
  }
  return word;
}

}  // namespace

InstructionSequence concat(const InstructionSequence& s1,
                           const InstructionSequence& s2) {
  if (!s1.is_finite()) return s1;
  std::vector<PrimitiveInstruction> prefix = s1.prefix();
  prefix.insert(prefix.end(), s2.prefix().begin(), s2.prefix().end());
  return InstructionSequence(std::move(prefix), s2.period());
}

InstructionSequence repeat(const InstructionSequence& s) {
  if (!s.is_finite()) return s;
  return InstructionSequence({}, primitive_root(s.prefix()));
}

InstructionSequence canonicalize(const InstructionSequence& s) {
  if (s.is_finite()) return s;
  std::vector<PrimitiveInstruction> period = primitive_root(s.period());
  std::vector<PrimitiveInstruction> prefix = s.prefix();
  while (!prefix.empty() && prefix.back() == period.back()) {
    period.insert(period.begin(), period.back());
    period.pop_back();
    prefix.pop_back();
  }
  return InstructionSequence(std::move(prefix), std::move(period));
}

bool seq_equal(const InstructionSequence& s1, const InstructionSequence& s2) {
  return canonicalize(s1) == canonicalize(s2);
}

namespace {

// Where a chain of jumps ultimately lands.
struct JumpResolution {
  enum class Kind { Zero, Target, Out } kind;
  std::size_t target = 0;  // position, for Kind::Target
  Nat absolute;            // unfolded landing position, for Kind::Out
};

// One pass of jump rewriting over a canonical representation: follows
// every chain of jumps to its final landing point, with jump cycles and
// jumps onto #0 resolving to #0, and rewrites each jump accordingly.
InstructionSequence resolve_jumps(const InstructionSequence& s) {
  const std::size_t p = s.prefix().size();
  const std::size_t q = s.period().size();
  const std::size_t n = p + q;
  auto instr = [&](std::size_t i) -> const PrimitiveInstruction& {
    return i < p ? s.prefix()[i] : s.period()[i - p];
  };

  enum class State { Unvisited, InProgress, Done };
  std::vector<State> state(n, State::Unvisited);
  std::vector<JumpResolution> resolution(n);

  auto resolve = [&](std::size_t start) {
    if (state[start] == State::Done) return;
    std::vector<std::size_t> path;
    std::optional<JumpResolution> result;
    std::size_t cur = start;
    while (true) {
      if (state[cur] == State::Done) {
        result = resolution[cur];
        break;
      }
      if (state[cur] == State::InProgress) {
        result = JumpResolution{JumpResolution::Kind::Zero, 0, 0};
        break;
      }
      state[cur] = State::InProgress;
      path.push_back(cur);
      const Nat& offset = instr(cur).jump_offset();
      if (offset == 0) {
        result = JumpResolution{JumpResolution::Kind::Zero, 0, 0};
        break;
      }
      const Nat abs_target = Nat(cur) + offset;
      std::size_t target;
      if (abs_target < p) {
        target = static_cast<std::size_t>(abs_target);
      } else if (q > 0) {
        target = p + static_cast<std::size_t>((abs_target - p) % q);
      } else {
        result = JumpResolution{JumpResolution::Kind::Out, 0, abs_target};
        break;
      }
      if (!instr(target).is_jump()) {
        result = JumpResolution{JumpResolution::Kind::Target, target, 0};
        break;
      }
      cur = target;
    }
    for (std::size_t i : path) {
      state[i] = State::Done;
      resolution[i] = *result;
    }
  };

  auto rewrite = [&](std::size_t i) -> PrimitiveInstruction {
    const JumpResolution& r = resolution[i];
    switch (r.kind) {
      case JumpResolution::Kind::Zero:
        return PrimitiveInstruction::jump(0);
      case JumpResolution::Kind::Out:
        return PrimitiveInstruction::jump(r.absolute - i);
      case JumpResolution::Kind::Target: {
        std::size_t offset;
        if (i < p) {
          offset = r.target - i;
        } else {
          offset = r.target >= i ? r.target - i : r.target + q - i;
        }
        return PrimitiveInstruction::jump(offset);
      }
    }
    return instr(i);
  };

  std::vector<PrimitiveInstruction> prefix = s.prefix();
  std::vector<PrimitiveInstruction> period = s.period();
  for (std::size_t i = 0; i < n; ++i) {
    if (!instr(i).is_jump()) continue;
    resolve(i);
    (i < p ? prefix[i] : period[i - p]) = rewrite(i);
  }
  return InstructionSequence(std::move(prefix), std::move(period));
}

}  // namespace

InstructionSequence jump_normalize(const InstructionSequence& s0) {
  InstructionSequence s = canonicalize(s0);
  for (std::size_t rounds = s.prefix().size() + s.period().size() + 2;
       rounds > 0; --rounds) {
    InstructionSequence next = canonicalize(resolve_jumps(s));
    if (next == s) return s;
    s = std::move(next);
  }
  throw std::logic_error("jump normalization did not reach a fixed point");
}

bool struct_equal(const InstructionSequence& s1,
                  const InstructionSequence& s2) {
  return jump_normalize(s1) == jump_normalize(s2);
}

// ---------------------------------------------------------------------------
// Text syntax

namespace {

bool is_token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == ':' || c == '#' || c == '@';
}

struct ProgramParser {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t col = 1;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line, col);
  }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      advance();
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() const { return text[pos]; }

  Nat parse_number() {
    std::size_t start = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos])))
      advance();
    if (pos == start) fail("expected a number");
    return Nat(std::string(text.substr(start, pos - start)));
  }

  BasicInstruction parse_basic() {
    skip_ws();
    if (pos >= text.size() ||
        !(std::isalpha(static_cast<unsigned char>(text[pos])) ||
          text[pos] == '_'))
      fail("expected a basic instruction");
    const std::size_t token_line = line;
    const std::size_t token_col = col;
    std::size_t start = pos;
    while (pos < text.size() && is_token_char(text[pos])) advance();
    std::string_view token = text.substr(start, pos - start);
    if (token.find(':') != std::string_view::npos) {
      try {
        return BasicInstruction::symbolic(parse_instruction(token));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), token_line, token_col);
      }
    }
    if (opcode_from_name(token))
      throw ParseError("operation '" + std::string(token) +
                           "' needs ':'-separated operands",
                       token_line, token_col);
    if (token == "tau")
      throw ParseError("'tau' is reserved for the internal action",
                       token_line, token_col);
    return BasicInstruction::opaque(std::string(token));
  }

  PrimitiveInstruction parse_primitive() {
    const char c = peek();
    if (c != '!' && c != '#' && c != '+' && c != '-' &&
        !(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
      fail("expected an instruction");
    if (c == '!') {
      advance();
      return PrimitiveInstruction::halt();
    }
    if (c == '#') {
      advance();
      return PrimitiveInstruction::jump(parse_number());
    }
    if (c == '+') {
      advance();
      return PrimitiveInstruction::pos_test(parse_basic());
    }
    if (c == '-') {
      advance();
      return PrimitiveInstruction::neg_test(parse_basic());
    }
    return PrimitiveInstruction::plain(parse_basic());
  }

  InstructionSequence parse_item() {
    if (at_end()) fail("expected an instruction");
    if (peek() == '(') {
      advance();
      InstructionSequence inner = parse_sequence();
      if (at_end() || peek() != ')') fail("expected ')'");
      advance();
      if (at_end() || peek() != '*') fail("expected '*' after ')'");
      advance();
      if (inner.is_finite())
        return InstructionSequence::periodic({}, inner.prefix());
      return inner;
    }
    return InstructionSequence::finite({parse_primitive()});
  }

  InstructionSequence parse_sequence() {
    InstructionSequence acc = parse_item();
    while (!at_end() && peek() == ';') {
      advance();
      acc = concat(acc, parse_item());
    }
    return acc;
  }
};

}  // namespace

InstructionSequence parse_program(std::string_view text) {
  ProgramParser parser{text};
  InstructionSequence s = parser.parse_sequence();
  if (!parser.at_end()) parser.fail("unexpected trailing input");
  return s;
}

InstructionSequence parse_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open program file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_program(buffer.str());
}

std::string program_text(const InstructionSequence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.prefix().size(); ++i) {
    if (i > 0) out += ';';
    out += s.prefix()[i].text();
  }
  if (!s.is_finite()) {
    if (!s.prefix().empty()) out += ';';
    out += '(';
    for (std::size_t i = 0; i < s.period().size(); ++i) {
      if (i > 0) out += ';';
      out += s.period()[i].text();
    }
    out += ")*";
  }
  return out;
}

}  // namespace pgaram
