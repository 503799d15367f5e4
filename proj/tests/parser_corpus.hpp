#pragma once

// Hand-written SMT-LIB programs that jointly exercise every production rule
// of the fixed grammar, plus deliberately malformed inputs with their
// expected error positions.

#include <string>
#include <vector>

namespace testutil {

inline const std::vector<std::string>& valid_programs() {
  static const std::vector<std::string> programs = {
      // commands
      "(set-logic QF_LIA)",
      "(set-logic ALL)(check-sat)",
      "(set-option :produce-models true)",
      "(set-option :random-seed 42)",
      "(set-info :status sat)",
      "(set-option :interactive-mode)",
      "(set-info :notes (a 1 b))",
      "(set-info :source \"desk\")",
      "(declare-const x Int)",
      "(declare-const b Bool)(assert b)(check-sat)",
      "(declare-fun f () Int)",
      "(declare-fun g (Int) Int)",
      "(declare-fun h (Int Bool) Int)",
      "(declare-sort Color 0)",
      "(declare-sort Pair 2)",
      "(declare-sort Opaque)",
      "(define-fun one () Int 1)",
      "(define-fun inc ((n Int)) Int (+ n 1))",
      "(define-fun add ((a Int) (b Int)) Int (+ a b))",
      "(define-sort MyInt () Int)",
      "(define-sort Arr (K V) (Array K V))",
      "(declare-datatype Unit ((mk-unit)))",
      "(declare-datatype Pair ((mk-pair (first Int) (second Int))))",
      "(declare-datatypes ((List 1)) (((nil) (cons (head Int) (tail (List Int))))))",
      "(declare-datatypes ((Tree 0) (Leaf 0)) (((node (kid Leaf))) ((leaf))))",
      "(assert true)",
      "(assert (= 1 1))(check-sat)(get-model)",
      "(get-value (x))",
      "(get-value (x y (+ x y)))",
      "(push)(pop)",
      "(push 2)(pop 2)",
      "(push 1)(assert false)(pop 1)(check-sat)",
      "(echo \"hello world\")",
      "(exit)",
      // terms: constants of every kind
      "(assert (= n 42))",
      "(assert (= r 3.14))",
      "(assert (= bv #xFF))",
      "(assert (= bv2 #b1010))",
      "(assert (= s \"text\"))",
      // terms: qualified identifiers
      "(assert (= x y))",
      "(assert (= (as emptyset (Set Int)) empty2))",
      "(assert (= ((_ extract 7 0) bv) bv8))",
      "(assert (= (_ bv5 32) word))",
      "(assert ((as const (Array Int Int)) 0))",
      // terms: application, let, quantifiers, annotations
      "(assert (and p q r))",
      "(assert (or (not p) (=> q p)))",
      "(assert (let ((t (+ x 1))) (> t x)))",
      "(assert (let ((a 1) (b 2)) (= (+ a b) 3)))",
      "(assert (forall ((n Int)) (>= (* n n) 0)))",
      "(assert (exists ((n Int) (m Int)) (= n m)))",
      "(assert (! (> x 0) :named positive))",
      "(assert (! (> x 0) :named positive :weight 2))",
      // sorts: parametric and indexed
      "(declare-const a (Array Int (Array Int Bool)))",
      "(declare-const w (_ BitVec 8))",
      "(declare-fun sel ((Array Int Int) Int) Int)",
      // unknown commands fall back to the generic s-expression form
      "(check-sat-assuming (p (not q)))",
      "(get-info :name)",
      "(get-unsat-core)",
      "(reset)",
      "(minimize (+ x y))",
      "(custom-cmd :depth 3 \"note\" #b01 (nested (deeper 2.5)) let)",
      // multi-command scripts
      "(set-logic QF_BV)\n(declare-const v (_ BitVec 4))\n"
      "(assert (= v #b0001))\n(check-sat)\n(get-model)\n(exit)",
      "; comment only\n(set-info :k 1)(assert (> 2.0 1))(check-sat)",
  };
  return programs;
}

inline const std::vector<std::string>& malformed_programs() {
  static const std::vector<std::string> programs = {
      "(assert (> x 1)",            // unclosed command
      "(declare-const x)",          // missing sort
      "( )",                        // empty form
      "(push x)",                   // non-numeral argument
      ")",                          // stray closing paren
      "(assert)",                   // missing term
      "(declare-fun f Int)",        // missing parameter list
      "(assert (let ((x)) x))",     // binding without a term
      "(assert (forall () true))",  // empty quantifier binder
      "(define-sort P () )",        // missing sort body
  };
  return programs;
}

}  // namespace testutil
