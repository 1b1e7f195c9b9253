#include "stipsim/table_builder.hpp"

namespace stipsim {

// Table machine for the double-sum parity problem. Tape layout during a
// round, region on the left:
//
//   [lhs + rhs][=][rhs copy][=][lhs copy, reversed, grows right]...
//
// and a second sep/copy group for the second pass. Copies are built by
// marking region cells (0->a, 1->b, +->p) and restoring them after each
// pass, so every pass re-reads whatever currently sits in the input region.
// The sum is formed in the reversed lhs copy by repeated decrement of the
// rhs copy and increment of the lhs copy (least significant digit leftmost,
// so carries grow into open tape). The two reversed sums are then compared
// digit-wise (c = compared 0, d = compared 1) and the verdict is the parity
// of the least significant digit. Unplanned (state, symbol) pairs fall into
// a sink state that walks right forever: they are reachable only under
// mid-computation input rewrites, where the run must not halt spuriously.
MachineSpec pr_machine_spec() {
  const std::string digits = "01";
  const std::string marks = "ab";
  TableBuilder b("01+", "01+=abpcd_", '_');

  for (const char* s :
       {"init", "toA", "findplus", "copyrhs", "put0A", "put1A", "backA", "seal",
        "backB", "seekplus", "copylhs", "put0B", "put1B", "restore", "sumseek",
        "sumback", "zcheck", "borrow", "carry", "passes0", "passes1", "passes2",
        "nextinit", "nextback", "cmpseek1", "cmpseek2", "cmpread", "match0a",
        "match0b", "match0c", "match1a", "match1b", "match1c", "tail0", "tail1",
        "cmpback", "parback", "parseek1", "parseek2", "parread", "rstback",
        "rstfind", "erase", "eraseback", "regleft", "lost", "acc", "rej"})
    b.state(s);

  // Round init: walk right over the region, seal it with the first '=', and
  // return to the region's left edge.
  b.on("init", "01+abp", "init", 0, Move::Right);
  b.on("init", "_", "toA", '=', Move::Left);
  b.on("toA", "01+=abpcd", "toA", 0, Move::Left);
  b.on("toA", "_", "findplus", 0, Move::Right);

  // Copy rhs into the first free area: mark '+', then take each unmarked rhs
  // digit left to right, appending it at the first blank.
  b.on("findplus", "01ab", "findplus", 0, Move::Right);
  b.on("findplus", "+", "copyrhs", 'p', Move::Right);
  b.on("findplus", "p", "copyrhs", 0, Move::Right);
  b.on("copyrhs", "ab", "copyrhs", 0, Move::Right);
  b.on("copyrhs", "0", "put0A", 'a', Move::Right);
  b.on("copyrhs", "1", "put1A", 'b', Move::Right);
  b.on("copyrhs", "=", "seal", 0, Move::Right);  // rhs exhausted
  b.on("put0A", "01+=abpcd", "put0A", 0, Move::Right);
  b.on("put0A", "_", "backA", '0', Move::Left);
  b.on("put1A", "01+=abpcd", "put1A", 0, Move::Right);
  b.on("put1A", "_", "backA", '1', Move::Left);
  b.on("backA", "01+=abpcd", "backA", 0, Move::Left);
  b.on("backA", "_", "findplus", 0, Move::Right);

  // Close the rhs copy with '=', then copy the lhs reversed: take unmarked
  // lhs digits right to left, appending each at the first blank.
  b.on("seal", "01+=abpcd", "seal", 0, Move::Right);
  b.on("seal", "_", "backB", '=', Move::Left);
  b.on("backB", "01+=abpcd", "backB", 0, Move::Left);
  b.on("backB", "_", "seekplus", 0, Move::Right);
  b.on("seekplus", "01ab", "seekplus", 0, Move::Right);
  b.on("seekplus", "p", "copylhs", 0, Move::Left);
  b.on("seekplus", "+", "copylhs", 'p', Move::Left);
  b.on("copylhs", "ab", "copylhs", 0, Move::Left);
  b.on("copylhs", "0", "put0B", 'a', Move::Right);
  b.on("copylhs", "1", "put1B", 'b', Move::Right);
  b.on("copylhs", "_", "restore", 0, Move::Right);  // lhs exhausted
  b.on("put0B", "01+=abpcd", "put0B", 0, Move::Right);
  b.on("put0B", "_", "backB", '0', Move::Left);
  b.on("put1B", "01+=abpcd", "put1B", 0, Move::Right);
  b.on("put1B", "_", "backB", '1', Move::Left);

  // Unmark the region left to right, then head for the right end to add.
  b.on("restore", "a", "restore", '0', Move::Right);
  b.on("restore", "b", "restore", '1', Move::Right);
  b.on("restore", "p", "restore", '+', Move::Right);
  b.on("restore", "01+", "restore", 0, Move::Right);
  b.on("restore", "=", "sumseek", 0, Move::Right);

  // Addition loop over the two rightmost areas: while the rhs copy is
  // nonzero, decrement it and increment the reversed lhs copy.
  b.on("sumseek", "01+=abpcd", "sumseek", 0, Move::Right);
  b.on("sumseek", "_", "sumback", 0, Move::Left);
  b.on("sumback", "01", "sumback", 0, Move::Left);
  b.on("sumback", "=", "zcheck", 0, Move::Left);
  b.on("zcheck", "0", "zcheck", 0, Move::Left);
  b.on("zcheck", "1", "borrow", '0', Move::Right);
  b.on("zcheck", "=", "passes0", 0, Move::Left);  // rhs copy is zero: sum done
  b.on("borrow", "0", "borrow", '1', Move::Right);
  b.on("borrow", "=", "carry", 0, Move::Right);
  b.on("carry", "1", "carry", '0', Move::Right);
  b.on("carry", "0", "sumback", '1', Move::Left);
  b.on("carry", "_", "sumback", '1', Move::Left);

  // Which pass finished? Count the separators left of the zeroed rhs copy:
  // none -> first pass, two -> second.
  b.on("passes0", "01+abpcd", "passes0", 0, Move::Left);
  b.on("passes0", "=", "passes1", 0, Move::Left);
  b.on("passes0", "_", "nextinit", 0, Move::Right);
  b.on("passes1", "01+abpcd", "passes1", 0, Move::Left);
  b.on("passes1", "=", "passes2", 0, Move::Left);
  b.on("passes2", "01+abpcd", "passes2", 0, Move::Left);
  b.on("passes2", "_", "cmpseek1", 0, Move::Right);

  // Second pass: seal a new group and copy again off the live region.
  b.on("nextinit", "01+=abpcd", "nextinit", 0, Move::Right);
  b.on("nextinit", "_", "nextback", '=', Move::Left);
  b.on("nextback", "01+=abpcd", "nextback", 0, Move::Left);
  b.on("nextback", "_", "findplus", 0, Move::Right);

  // Compare the two reversed sums digit by digit from the least significant
  // end, marking compared digits (0 -> c, 1 -> d).
  b.on("cmpseek1", "01+abpcd", "cmpseek1", 0, Move::Right);
  b.on("cmpseek1", "=", "cmpseek2", 0, Move::Right);
  b.on("cmpseek2", "01abpcd+", "cmpseek2", 0, Move::Right);
  b.on("cmpseek2", "=", "cmpread", 0, Move::Right);
  b.on("cmpread", "cd", "cmpread", 0, Move::Right);
  b.on("cmpread", "0", "match0a", 'c', Move::Right);
  b.on("cmpread", "1", "match1a", 'd', Move::Right);
  b.on("cmpread", "=", "tail0", 0, Move::Right);  // first sum exhausted
  b.on("match0a", "01cd", "match0a", 0, Move::Right);
  b.on("match0a", "=", "match0b", 0, Move::Right);
  b.on("match0b", "01", "match0b", 0, Move::Right);
  b.on("match0b", "=", "match0c", 0, Move::Right);
  b.on("match0c", "cd", "match0c", 0, Move::Right);
  b.on("match0c", "0", "cmpback", 'c', Move::Left);
  b.on("match0c", "1", "rstback", 0, Move::Left);
  b.on("match0c", "_", "cmpback", 0, Move::Left);  // missing high digit reads as 0
  b.on("match1a", "01cd", "match1a", 0, Move::Right);
  b.on("match1a", "=", "match1b", 0, Move::Right);
  b.on("match1b", "01", "match1b", 0, Move::Right);
  b.on("match1b", "=", "match1c", 0, Move::Right);
  b.on("match1c", "cd", "match1c", 0, Move::Right);
  b.on("match1c", "1", "cmpback", 'd', Move::Left);
  b.on("match1c", "0", "rstback", 0, Move::Left);
  b.on("match1c", "_", "rstback", 0, Move::Left);
  b.on("tail0", "01", "tail0", 0, Move::Right);
  b.on("tail0", "=", "tail1", 0, Move::Right);
  b.on("tail1", "cd", "tail1", 0, Move::Right);
  b.on("tail1", "0", "cmpback", 'c', Move::Left);
  b.on("tail1", "1", "rstback", 0, Move::Left);
  b.on("tail1", "_", "parback", 0, Move::Left);  // both exhausted: sums equal
  b.on("cmpback", "01+=abpcd", "cmpback", 0, Move::Left);
  b.on("cmpback", "_", "cmpseek1", 0, Move::Right);

  // Equal sums: the verdict is the parity of the least significant digit,
  // the first compared cell of the first sum.
  b.on("parback", "01+=abpcd", "parback", 0, Move::Left);
  b.on("parback", "_", "parseek1", 0, Move::Right);
  b.on("parseek1", "01+abpcd", "parseek1", 0, Move::Right);
  b.on("parseek1", "=", "parseek2", 0, Move::Right);
  b.on("parseek2", "01+abpcd", "parseek2", 0, Move::Right);
  b.on("parseek2", "=", "parread", 0, Move::Right);
  b.on("parread", "c", "acc", 0, Move::Right);
  b.on("parread", "d", "rej", 0, Move::Right);

  // Unequal sums: erase everything right of the region and start over.
  b.on("rstback", "01+=abpcd", "rstback", 0, Move::Left);
  b.on("rstback", "_", "rstfind", 0, Move::Right);
  b.on("rstfind", "01+abpcd", "rstfind", 0, Move::Right);
  b.on("rstfind", "=", "erase", '_', Move::Right);
  b.on("erase", "01+=abpcd", "erase", '_', Move::Right);
  b.on("erase", "_", "eraseback", 0, Move::Left);
  b.on("eraseback", "_", "eraseback", 0, Move::Left);
  b.on("eraseback", "01+abpcd=", "regleft", 0, Move::Left);
  b.on("regleft", "01+=abpcd", "regleft", 0, Move::Left);
  b.on("regleft", "_", "init", 0, Move::Right);

  // Sink for rewrite-scrambled situations: drift right forever.
  b.on("lost", "01+=abpcd_", "lost", 0, Move::Right);

  return b.build("init", "acc", "rej", "lost");
}

}  // namespace stipsim
