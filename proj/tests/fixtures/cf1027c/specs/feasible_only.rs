use vstd::contrib::exec_spec::*;
use vstd::prelude::*;

// Feasibility only: the minimum-ratio requirement is missing.
verus! {
exec_spec_unverified! {
    pub open spec fn feasible_pair(st: Seq<i64>, x: i64, y: i64) -> bool {
        if x == y {
            st.to_multiset().count(x) >= 4
        } else {
            st.to_multiset().count(x) >= 2 && st.to_multiset().count(y) >= 2
        }
    }

    pub open spec fn rectangle_matches_pair(r: Rectangle, x: i64, y: i64) -> bool {
        (r.s1 == x && r.s2 == x && r.s3 == y && r.s4 == y)
        || (r.s1 == x && r.s2 == y && r.s3 == x && r.s4 == y)
        || (r.s1 == x && r.s2 == y && r.s3 == y && r.s4 == x)
        || (r.s1 == y && r.s2 == x && r.s3 == x && r.s4 == y)
        || (r.s1 == y && r.s2 == x && r.s3 == y && r.s4 == x)
        || (r.s1 == y && r.s2 == y && r.s3 == x && r.s4 == x)
    }

    pub open spec fn score_leq(a: i64, b: i64,
                               c: i64, d: i64) -> bool {
        (a + b) * (a + b) * c * d <=
            (c + d) * (c + d) * a * b
    }

    pub open spec fn list_ok(n: i64, st: Seq<i64>) -> bool {
        4 <= n && n <= 1_000_000
        && st.len() == n
        && (forall |j: i64|
            0 <= j < st.len() ==> 1 <= #[trigger] st[j as int] && st[j as int] <= 10_000)
        && exists |a: i64, b: i64|
            0 <= a < st.len() && 0 <= b < st.len()
            && feasible_pair(st, st[a as int], st[b as int])
    }

    pub open spec fn pre_spec(in1: In1) -> bool {
        in1.ns.len() >= 1
        && in1.ns.len() == in1.sticks.len()
        && forall |i: i64|
            0 <= i < in1.ns.len() ==>
                #[trigger] list_ok(in1.ns[i as int], in1.sticks[i as int])
    }

    pub open spec fn rectangle_valid_for_sticks(
        st: Seq<i64>, r: Rectangle
    ) -> bool {
        exists |x: i64, y: i64|
            1 <= x <= 10_000
            && 1 <= y <= 10_000
            && feasible_pair(st, x, y)
            && rectangle_matches_pair(r, x, y)
    }

    pub open spec fn post_spec(in1: In1, out: Out) -> bool {
        out.rectangles.len() == in1.sticks.len()
        && forall |i: i64|
            0 <= i < in1.sticks.len() ==>
                #[trigger] rectangle_valid_for_sticks(
                    in1.sticks[i as int],
                    out.rectangles[i as int])
    }
}
}
