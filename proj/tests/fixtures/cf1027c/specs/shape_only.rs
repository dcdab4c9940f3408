use vstd::contrib::exec_spec::*;
use vstd::prelude::*;

// Shape only: two equal pairs, nothing tied to the input.
verus! {
exec_spec_unverified! {
    pub open spec fn pre_spec(in1: In1) -> bool {
        in1.ns.len() >= 1
        && in1.ns.len() == in1.sticks.len()
        && forall |i: i64|
            0 <= i < in1.ns.len() ==>
                in1.ns[i as int] >= 4
                && in1.sticks[i as int].len() as i64
                    == in1.ns[i as int]
                && forall |j: i64|
                    0 <= j < in1.sticks[i as int].len() ==>
                        1 <= in1.sticks[i as int][j as int]
                        && in1.sticks[i as int][j as int] <= 10000
    }

    pub open spec fn is_two_pairs(rect: Rectangle) -> bool {
        (rect.s1 == rect.s2 && rect.s3 == rect.s4)
        || (rect.s1 == rect.s3 && rect.s2 == rect.s4)
        || (rect.s1 == rect.s4 && rect.s2 == rect.s3)
    }

    pub open spec fn post_spec(in1: In1, out: Out) -> bool {
        out.rectangles.len() == in1.ns.len()
        && forall |i: i64|
            0 <= i < in1.ns.len() ==>
                is_two_pairs(out.rectangles[i as int])
    }
}
}
