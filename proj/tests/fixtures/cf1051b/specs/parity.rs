use vstd::contrib::exec_spec::*;
use vstd::prelude::*;

// Parity in place of the gcd condition.
verus! {
exec_spec_unverified! {
    pub open spec fn pre_spec(in1: In1) -> bool {
        &&& in1.intervals.len() == 1
        &&& {
            let iv = in1.intervals[0];
            &&& 1 <= iv.l
            &&& iv.l < iv.r
            &&& iv.r <= 1_000_000_000_000_000_000
            &&& iv.r - iv.l + 1 <= 300_000
            &&& (iv.r - iv.l) % 2 == 1
        }
    }

    pub open spec fn disjoint_lines(p: PairLine, q: PairLine) -> bool {
        &&& p.a != q.a
        &&& p.a != q.b
        &&& p.b != q.a
        &&& p.b != q.b
    }

    pub open spec fn line_ok(iv: Interval, p: PairLine) -> bool {
        &&& iv.l <= p.a
        &&& p.a <= iv.r
        &&& iv.l <= p.b
        &&& p.b <= iv.r
        &&& p.a != p.b
        &&& (p.a % 2 != 0 || p.b % 2 != 0)
    }

    pub open spec fn post_spec(in1: In1, out: Out) -> bool {
        &&& pre_spec(in1)
        &&& out.is_yes
        &&& {
            let iv = in1.intervals[0];
            &&& forall |i: i64|
                0 <= i < out.lines.len() ==>
                    line_ok(iv, out.lines[i as int])
            &&& (out.lines.len() as i128) == (iv.r - iv.l + 1) / 2
            &&& forall |i: i64, j: i64|
                0 <= i < out.lines.len() && i < j < out.lines.len() ==>
                    disjoint_lines(out.lines[i as int], out.lines[j as int])
        }
    }
}
}
