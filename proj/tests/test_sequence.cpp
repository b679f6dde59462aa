#include <doctest.h>

#include "gen.hpp"
#include "pgaram/errors.hpp"
#include "pgaram/extract.hpp"
#include "pgaram/sequence.hpp"

using namespace pgaram;

namespace {

PrimitiveInstruction act(const char* name) {
  return PrimitiveInstruction::plain(BasicInstruction::opaque(name));
}
PrimitiveInstruction jmp(std::uint64_t l) {
  return PrimitiveInstruction::jump(l);
}
InstructionSequence fin(std::vector<PrimitiveInstruction> v) {
  return InstructionSequence::finite(std::move(v));
}
InstructionSequence per(std::vector<PrimitiveInstruction> prefix,
                        std::vector<PrimitiveInstruction> period) {
  return InstructionSequence::periodic(std::move(prefix), std::move(period));
}

// Unfoldings agree on the first `upto` positions (both absent counts as
// agreement at a position).
bool unfoldings_agree(const InstructionSequence& s1,
                      const InstructionSequence& s2, std::size_t upto) {
  for (std::size_t i = 0; i < upto; ++i) {
    const auto u1 = s1.at(i);
    const auto u2 = s2.at(i);
    if (u1.has_value() != u2.has_value()) return false;
    if (u1 && !(*u1 == *u2)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("concatenation juxtaposes and repetition absorbs") {
  CHECK(concat(fin({act("a")}), fin({act("b")})) == fin({act("a"), act("b")}));
  CHECK(concat(per({}, {act("a")}), fin({act("b")})) == per({}, {act("a")}));
  CHECK(concat(fin({jmp(2)}), fin({act("a"), jmp(0)})) ==
        fin({jmp(2), act("a"), jmp(0)}));
}

TEST_CASE("repeat folds powers and fixes infinite sequences") {
  CHECK(repeat(fin({act("a"), act("b"), act("a"), act("b")})) ==
        per({}, {act("a"), act("b")}));
  CHECK(repeat(fin({act("a")})) == per({}, {act("a")}));
  const InstructionSequence s = per({act("a")}, {act("b")});
  CHECK(repeat(s) == s);
  CHECK(unfoldings_agree(repeat(s), s, 50));
}

TEST_CASE("canonicalize computes minimal prefix and primitive period") {
  CHECK(canonicalize(per({}, {act("a"), act("a")})) == per({}, {act("a")}));
  const InstructionSequence finite = fin({act("a")});
  CHECK(canonicalize(finite) == finite);
  CHECK(canonicalize(per({act("a")}, {act("b"), act("a")})) ==
        canonicalize(per({act("a"), act("b")}, {act("a"), act("b")})));
  CHECK(canonicalize(per({act("a")}, {act("b"), act("a")})) ==
        per({}, {act("a"), act("b")}));
}

TEST_CASE("canonicalize is idempotent on random sequences") {
  testgen::Gen gen(31);
  for (int k = 0; k < 400; ++k) {
    const InstructionSequence s = gen.program(20, 3, 8, true);
    const InstructionSequence c = canonicalize(s);
    CHECK(canonicalize(c) == c);
    CHECK(unfoldings_agree(s, c, 100));
  }
}

TEST_CASE("sequence equality identifies rotated representations") {
  // (a;b) repeated equals a;(b;a) repeated
  CHECK(seq_equal(per({}, {act("a"), act("b")}),
                  per({act("a")}, {act("b"), act("a")})));
  CHECK(!seq_equal(fin({act("a"), act("b")}), fin({act("b"), act("a")})));
  CHECK(seq_equal(per({}, {act("a")}), per({}, {act("a"), act("a")})));
}

TEST_CASE("sequence equality matches unfolding agreement on random pairs") {
  testgen::Gen gen(32);
  for (int k = 0; k < 600; ++k) {
    const InstructionSequence s1 = gen.program(12, 3, 8, true);
    const InstructionSequence s2 =
        gen.coin() ? gen.reshuffle(s1) : gen.program(12, 3, 8, true);
    CHECK(seq_equal(s1, s2) == unfoldings_agree(s1, s2, 200));
  }
}

TEST_CASE("concat is associative and repeat folds doubling") {
  testgen::Gen gen(33);
  for (int k = 0; k < 200; ++k) {
    const InstructionSequence a = gen.program(6, 3, 8, true);
    const InstructionSequence b = gen.program(6, 3, 8, true);
    const InstructionSequence c = gen.program(6, 3, 8, true);
    CHECK(seq_equal(concat(concat(a, b), c), concat(a, concat(b, c))));
    if (a.is_finite())
      CHECK(seq_equal(repeat(concat(a, a)), repeat(a)));
  }
}

TEST_CASE("jump normalization collapses chains and shortens period jumps") {
  CHECK(jump_normalize(fin({jmp(2), act("a"), jmp(0)})) ==
        fin({jmp(0), act("a"), jmp(0)}));
  CHECK(jump_normalize(per({}, {jmp(3), act("a")})) ==
        per({}, {jmp(1), act("a")}));
  const InstructionSequence untouched = fin({act("a"), PrimitiveInstruction::halt()});
  CHECK(jump_normalize(untouched) == untouched);
}

TEST_CASE("jump normalization resolves jump cycles to #0") {
  CHECK(jump_normalize(per({}, {jmp(1)})) == per({}, {jmp(0)}));
  CHECK(jump_normalize(per({}, {jmp(1), jmp(1)})) == per({}, {jmp(0)}));
  CHECK(jump_normalize(per({}, {jmp(2), act("a")})) ==
        per({}, {jmp(0), act("a")}));
}

TEST_CASE("jump normalization leaves out-of-range jumps alone") {
  CHECK(jump_normalize(fin({jmp(5), act("a")})) == fin({jmp(5), act("a")}));
  // a chain into an out-of-range jump still collapses
  CHECK(jump_normalize(fin({jmp(1), jmp(3)})) == fin({jmp(4), jmp(3)}));
}

TEST_CASE("structural equality decides jump-rewriting equivalences") {
  CHECK(struct_equal(fin({jmp(2), act("a"), jmp(0)}),
                     fin({jmp(0), act("a"), jmp(0)})));
  CHECK(!struct_equal(fin({jmp(1), act("a")}), fin({act("a"), act("a")})));
  // confirmed behaviourally: one action versus two
  CHECK(!behaviourally_equivalent(fin({jmp(1), act("a")}),
                                  fin({act("a"), act("a")})));
  const InstructionSequence s = per({act("a")}, {jmp(2), act("b")});
  CHECK(struct_equal(s, s));
}

TEST_CASE("jump normalization preserves extracted behaviour") {
  testgen::Gen gen(34);
  for (int k = 0; k < 400; ++k) {
    const InstructionSequence s = gen.program(12, 3, 8, true);
    const InstructionSequence normal = jump_normalize(s);
    CHECK(bisimilar(extract(s), extract(normal)));
    // normalization is sound for structural equality
    CHECK(struct_equal(s, normal));
  }
}

TEST_CASE("jump normalization is a fixed point of itself") {
  testgen::Gen gen(36);
  for (int k = 0; k < 300; ++k) {
    const InstructionSequence normal =
        jump_normalize(gen.program(12, 3, 8, true));
    CHECK(jump_normalize(normal) == normal);
    CHECK(canonicalize(normal) == normal);
  }
}

TEST_CASE("sequence equality implies structural equality") {
  testgen::Gen gen(37);
  for (int k = 0; k < 300; ++k) {
    const InstructionSequence s1 = gen.program(12, 3, 8, true);
    const InstructionSequence s2 =
        gen.coin() ? gen.reshuffle(s1) : gen.program(12, 3, 8, true);
    if (seq_equal(s1, s2)) CHECK(struct_equal(s1, s2));
  }
}

TEST_CASE("program text parses and prints") {
  const InstructionSequence s = parse_program("+eq:1:#0 ; #3 ; mov:1:0 ; !");
  CHECK(s ==
        fin({PrimitiveInstruction::pos_test(BasicInstruction::symbolic(
                 parse_instruction("eq:1:#0"))),
             jmp(3),
             PrimitiveInstruction::plain(
                 BasicInstruction::symbolic(parse_instruction("mov:1:0"))),
             PrimitiveInstruction::halt()}));
  CHECK(program_text(s) == "+eq:1:#0;#3;mov:1:0;!");
  CHECK(parse_program("a;b;(c;d)*") ==
        per({act("a"), act("b")}, {act("c"), act("d")}));
  CHECK(program_text(per({act("a")}, {act("b")})) == "a;(b)*");
}

TEST_CASE("parser and printer round-trip exactly") {
  testgen::Gen gen(35);
  for (int k = 0; k < 400; ++k) {
    const InstructionSequence s = gen.program(14, 3, 8, true);
    CHECK(parse_program(program_text(s)) == s);
  }
  // representations survive even when not canonical
  const InstructionSequence squared = per({}, {act("a"), act("a")});
  CHECK(parse_program(program_text(squared)) == squared);
}

TEST_CASE("parser reports positions and distinct errors") {
  try {
    parse_program("a;\n  mov:#1:#2;!");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(doctest::String(e.what()) ==
          doctest::Contains("immediate destination"));
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_WITH_AS(parse_program("(a;b"), doctest::Contains("expected ')'"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_program("(a;b)"),
                       doctest::Contains("expected '*'"), ParseError);
  CHECK_THROWS_WITH_AS(parse_program(""),
                       doctest::Contains("expected an instruction"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_program("a;;b"),
                       doctest::Contains("expected an instruction"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_program("mov"),
                       doctest::Contains("needs ':'-separated operands"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_program("tau"), doctest::Contains("reserved"),
                       ParseError);
  CHECK_THROWS_AS(parse_program("a;b)*"), ParseError);
  CHECK_THROWS_AS(parse_program("#"), ParseError);
  CHECK_THROWS_WITH_AS(parse_program("()*"),
                       doctest::Contains("expected an instruction"),
                       ParseError);
}

TEST_CASE("repetition absorbs trailing program text") {
  CHECK(parse_program("(a)*;b") == per({}, {act("a")}));
  CHECK(parse_program("((a)*)*") == per({}, {act("a")}));
}

TEST_CASE("huge jump offsets and register numbers parse") {
  const InstructionSequence s =
      parse_program("#340282366920938463463374607431768211456;!");
  CHECK(s.at(0)->jump_offset() == Nat("340282366920938463463374607431768211456"));
  const InstructionSequence big =
      parse_program("mov:123456789012345678901234567890:0;!");
  CHECK(big.at(0)->basic().instruction().src1().index ==
        Nat("123456789012345678901234567890"));
}

TEST_CASE("opaque instructions compare by name") {
  CHECK(act("a") == act("a"));
  CHECK(!(act("a") == act("b")));
  const BasicInstruction custom = BasicInstruction::opaque(
      "a", [](const MemoryState&) { return false; },
      [](const MemoryState& s) { return s.write(0, BitString::from_text("1")); });
  CHECK(custom == BasicInstruction::opaque("a"));
}
