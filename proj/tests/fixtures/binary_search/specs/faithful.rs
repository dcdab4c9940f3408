use vstd::contrib::exec_spec::*;
use vstd::prelude::*;

verus! {
exec_spec_unverified! {
    pub open spec fn pre_spec(in1: In1) -> bool {
        in1.n >= 1
            && in1.n <= 200000
            && in1.arr.len() == in1.n
            && forall |i: usize|
                0 <= i < in1.n ==> (
                    i + 1 < in1.n ==>
                        #[trigger] in1.arr[i as int] <= in1.arr[(i + 1) as int]
                )
    }

    pub open spec fn post_spec(in1: In1, out: Out) -> bool {
        if out.pos == -1 {
            forall |i: usize|
                0 <= i < in1.n ==> #[trigger] in1.arr[i as int] != in1.k
        } else {
            0 <= out.pos
                && out.pos < in1.n as i64
                && in1.arr[out.pos as usize as int] == in1.k
                && forall |j: i64|
                    0 <= j < out.pos ==> #[trigger] in1.arr[j as int] != in1.k
        }
    }
}
}
