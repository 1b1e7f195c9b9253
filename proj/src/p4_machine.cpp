#include "stipsim/table_builder.hpp"

namespace stipsim {

// Table machine for K-fold ones counting. The encoded input is u '=' and K
// unary stars; the machine seals the region with a second '=' and builds a
// unary strip of '|' marks to its right:
//
//   [u = ***][=][strip]
//
// The first pass writes one '|' per '1' of u (marking processed ones b and
// restoring them afterwards); each later pass checks ones off against the
// strip (| -> ^) and must consume it exactly. One star is consumed (* -> .)
// per pass; when none remain the machine halts with the strip as output.
// A mismatching pass restores everything, erases the strip and starts over.
// Unplanned pairs drift right forever in the sink state.
MachineSpec p4_machine_spec() {
  TableBuilder b("01=*", "01=*b.|^_", '_');

  for (const char* s :
       {"init", "seal", "take", "wleft", "wscan", "wput", "wback", "wdone",
        "more", "more2", "cleft", "cscan", "cfind", "cback", "verify",
        "unmark", "rback", "rfix", "rstars", "rwipe", "rskip", "rhome",
        "lost", "acc", "rej"})
    b.state(s);

  // Walk to the end of the region; seal with '=' unless already sealed, then
  // consume the rightmost unconsumed star and rewind for a write pass.
  b.on("init", "01b", "init", 0, Move::Right);
  b.on("init", "=", "seal", 0, Move::Right);
  b.on("seal", "*.", "seal", 0, Move::Right);
  b.on("seal", "_", "take", '=', Move::Left);
  b.on("seal", "=", "take", 0, Move::Left);
  b.on("take", ".", "take", 0, Move::Left);
  b.on("take", "*", "wleft", '.', Move::Left);
  b.on("wleft", "01=*.b|^", "wleft", 0, Move::Left);
  b.on("wleft", "_", "wscan", 0, Move::Right);

  // Write pass: one strip mark per '1' of u.
  b.on("wscan", "0b", "wscan", 0, Move::Right);
  b.on("wscan", "1", "wput", 'b', Move::Right);
  b.on("wscan", "=", "wdone", 0, Move::Left);
  b.on("wput", "01=*.b|^", "wput", 0, Move::Right);
  b.on("wput", "_", "wback", '|', Move::Left);
  b.on("wback", "01=*.b|^", "wback", 0, Move::Left);
  b.on("wback", "_", "wscan", 0, Move::Right);
  b.on("wdone", "b", "wdone", '1', Move::Left);
  b.on("wdone", "0", "wdone", 0, Move::Left);
  b.on("wdone", "_", "more", 0, Move::Right);

  // Any stars left? Consume one and run a check pass, otherwise halt.
  b.on("more", "01", "more", 0, Move::Right);
  b.on("more", "=", "more2", 0, Move::Right);
  b.on("more2", ".", "more2", 0, Move::Right);
  b.on("more2", "*", "cleft", '.', Move::Left);
  b.on("more2", "=", "acc", 0, Move::Right);
  b.on("cleft", "01=*.b|^", "cleft", 0, Move::Left);
  b.on("cleft", "_", "cscan", 0, Move::Right);

  // Check pass: each '1' of u checks off one strip mark.
  b.on("cscan", "0b", "cscan", 0, Move::Right);
  b.on("cscan", "1", "cfind", 'b', Move::Right);
  b.on("cscan", "=", "verify", 0, Move::Right);
  b.on("cfind", "01b=*.^", "cfind", 0, Move::Right);
  b.on("cfind", "|", "cback", '^', Move::Left);
  b.on("cfind", "_", "rback", 0, Move::Left);  // more ones than strip marks
  b.on("cback", "01=*.b|^", "cback", 0, Move::Left);
  b.on("cback", "_", "cscan", 0, Move::Right);

  // u exhausted: the strip must be fully checked.
  b.on("verify", "*.=^", "verify", 0, Move::Right);
  b.on("verify", "|", "rback", 0, Move::Left);  // leftover strip mark
  b.on("verify", "_", "unmark", 0, Move::Left);
  b.on("unmark", "^", "unmark", '|', Move::Left);
  b.on("unmark", "=*.0", "unmark", 0, Move::Left);
  b.on("unmark", "b", "unmark", '1', Move::Left);
  b.on("unmark", "1", "unmark", 0, Move::Left);
  b.on("unmark", "_", "more", 0, Move::Right);

  // Mismatch: restore u and the stars, wipe the strip, start from scratch.
  b.on("rback", "01=*.b|^", "rback", 0, Move::Left);
  b.on("rback", "_", "rfix", 0, Move::Right);
  b.on("rfix", "b", "rfix", '1', Move::Right);
  b.on("rfix", "01", "rfix", 0, Move::Right);
  b.on("rfix", "=", "rstars", 0, Move::Right);
  b.on("rstars", ".", "rstars", '*', Move::Right);
  b.on("rstars", "*", "rstars", 0, Move::Right);
  b.on("rstars", "=", "rwipe", 0, Move::Right);
  b.on("rwipe", "|^", "rwipe", '_', Move::Right);
  b.on("rwipe", "_", "rskip", 0, Move::Left);
  b.on("rskip", "_", "rskip", 0, Move::Left);
  b.on("rskip", "01=*.b|^", "rhome", 0, Move::Left);
  b.on("rhome", "01=*.b|^", "rhome", 0, Move::Left);
  b.on("rhome", "_", "init", 0, Move::Right);

  b.on("lost", "01=*b.|^_", "lost", 0, Move::Right);

  return b.build("init", "acc", "rej", "lost");
}

}  // namespace stipsim
