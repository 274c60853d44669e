// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <iostream>

#include "properties.hpp"

using namespace qt;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void check(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

bool same_gens(const QReesAlgebra& a, const QReesAlgebra& b) {
    if (a.size() != b.size()) return false;
    for (const auto& g : a.generators()) {
        bool found = false;
        for (const auto& h : b.generators()) found = found || (g.weight == h.weight && g.poly == h.poly);
        if (!found) return false;
    }
    return true;
}

bool strictly_decreasing(const ResolveResult& r) {
    for (const auto& t : r.trace)
        for (int c : t.children)
            if (!(t.fc > r.trace[static_cast<std::size_t>(c)].fc)) return false;
    return true;
}

Outcome char_two_example() {
    Outcome o;
    auto f2 = Fp(2, {"x", "y", "z"});
    auto J = A(f2, {{"x^2+y^2*z", "2"}});
    auto D = diff_saturate(J);
    o.check(same_gens(D, A(f2, {{"x^2+y^2*z", "2"}, {"y^2", "1"}})), "Diff(J) = <(x^2+y^2 z)T^2, y^2 T>");
    auto Aelim = elimination_algebra(D, 0);
    o.check(same_gens(Aelim, A(Aelim.ring(), {{"y^2", "1"}})), "elimination algebra = <y^2 T>");

    Blowup b = blowup_chart(root_chart(f2), {0, 1, 2}, 2, 1, 1);
    auto J1 = transform(J, b);
    o.check(same_gens(J1, J), "J_1 = <(x^2+y^2 z)T^2>");
    // The elimination algebra lives on the (y, z) plane, blown up at its origin.
    auto yz = Aelim.ring();
    Blowup c = blowup_chart(root_chart(yz), {0, 1}, 1, 1, 1);
    auto A1 = transform(Aelim, c);
    o.check(same_gens(A1, A(yz, {{"y^2*z", "1"}})), "A_1 = <y^2 z T>");

    ClosedSet s_j = sing_locus(J1);
    ClosedSet s_a = sing_locus(A1);
    o.check(s_j.same_as(ClosedSet(I(f2, {"x", "y"}))), "Sing(J_1) = V(x, y)");
    o.check(s_a.same_as(ClosedSet(std::vector<Ideal>{I(yz, {"y"}), I(yz, {"z"})})), "Sing(A_1) = V(y) u V(z)");
    // Compare inside the (y, z) plane: V(x, y) projects to the line y = 0.
    ClosedSet s_j_plane(I(yz, {"y"}));
    o.check(s_j_plane.subset_of(s_a) && !s_a.subset_of(s_j_plane), "Sing(J_1) strictly inside Sing(A_1)");
    return o;
}

Outcome cusp() {
    Outcome o;
    auto r = Q({"x", "y"});
    auto res = resolve(root_chart(r), A(r, {{"x^2+y^3", "2"}}), 50);
    o.check(res.status == ResolveStatus::Resolved, "resolved");
    o.check(res.trace.size() == 3, "one blowup, two charts");
    if (!o.ok) return o;
    InvariantValue expect;
    expect.levels = {{W("1"), 0}, {W("3/2"), 0}};
    expect.terminator = Terminator::Point;
    o.check(res.trace[0].fc == expect, "Fc max = [(1, 0), (3/2, 0)] Point");
    o.check(res.trace[0].center == std::vector<std::string>{"x", "y"}, "center is the origin");
    // Hand computation: y-chart <(x^2+y)T^2>, x-chart <(1+x y^3)T^2>.
    for (const auto& leaf : res.leaves) o.check(sing_locus(leaf.algebra).is_empty(), "child Sing empty");
    o.check(res.leaves.size() == 2, "two leaves");
    if (res.leaves.size() == 2) {
        o.check(same_gens(res.leaves[0].algebra, A(r, {{"1+x*y^3", "2"}})), "x-chart algebra");
        o.check(same_gens(res.leaves[1].algebra, A(r, {{"x^2+y", "2"}})), "y-chart algebra");
    }
    return o;
}

Outcome equivalent_traces() {
    Outcome o;
    auto r2 = Q({"x", "y"});
    auto r3 = Q({"x", "y", "z"});
    for (auto [ring, f] : {std::pair{r2, std::string("x^2+y^3")}, std::pair{r3, std::string("x^2-y^2*z")}}) {
        auto a = resolve(root_chart(ring), A(ring, {{f, "2"}}), 50);
        auto b = resolve(root_chart(ring), A(ring, {{f, "2"}, {f, "1"}}), 50);
        o.check(a.status == ResolveStatus::Resolved, f + " resolved");
        o.check(detail::trace_json(a).dump(2) == detail::trace_json(b).dump(2), f + ": traces differ");
    }
    return o;
}

Outcome properties() {
    Outcome o;
    auto rep = run_all_properties();
    o.check(corpus().size() >= 10, "corpus has at least 10 algebras");
    o.check(rep.singular_samples >= 20, "at least 20 singular samples");
    o.check(rep.failures.empty(), rep.failures.empty() ? "" : rep.failures.front());
    if (o.ok)
        o.detail = std::to_string(rep.checks) + " checks, " + std::to_string(rep.singular_samples) + " singular samples, " +
                   std::to_string(rep.blowups) + " blowups";
    return o;
}

Outcome termination() {
    Outcome o;
    for (const char* f : {"cusp.txt", "umbrella.txt", "a2_y5.txt", "monomial.txt", "mixed3.txt"}) {
        auto pf = problem(f);
        auto res = resolve(pf.chart(), pf.algebra(), 50);
        o.check(res.status == ResolveStatus::Resolved, std::string(f) + " within 50 steps");
        o.check(strictly_decreasing(res), std::string(f) + " Fc decreases");
        for (const auto& leaf : res.leaves) o.check(sing_locus(leaf.algebra).is_empty(), std::string(f) + " leaf Sing empty");
        if (o.ok) o.detail += std::string(o.detail.empty() ? "" : ", ") + f + ": " + std::to_string(res.trace.size()) + " charts";
    }
    return o;
}

Outcome dimension_one() {
    Outcome o;
    auto r = Q({"x"});
    auto J = A(r, {{"x^3", "1"}});
    auto res = resolve(root_chart(r), J, 50);
    o.check(res.status == ResolveStatus::Resolved, "resolved");
    o.check(res.trace.size() == 4, "a chain of three blowups");
    for (std::size_t i = 0; i + 1 < res.trace.size(); ++i)
        o.check(res.trace[i].center == std::vector<std::string>{"x"}, "center V(x)");
    // Replay the chain: ord at the origin drops by one per blowup.
    Chart ch = root_chart(r);
    std::vector<std::string> orders;
    for (unsigned step = 1; step <= 3; ++step) {
        orders.push_back(ord_at_point(J, pt({0})).str());
        Blowup b = blowup_chart(ch, {0}, 0, step, static_cast<int>(step));
        J = transform(J, b);
        ch = b.child;
    }
    o.check(orders == std::vector<std::string>{"3", "2", "1"}, "orders 3, 2, 1");
    o.check(sing_locus(J).is_empty(), "Sing empty after three blowups");
    o.check(res.leaves.size() == 1 && same_gens(res.leaves[0].algebra, J), "resolver leaf matches the replay");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "char-2 example: Diff, elimination, transforms, singular loci", char_two_example},
        {2, "cusp resolves in one blowup", cusp},
        {3, "equivalent algebras give byte-identical traces", equivalent_traces},
        {4, "property suite over the corpus", properties},
        {5, "termination with decreasing invariant", termination},
        {6, "dimension one: orders 3, 2, 1, then empty", dimension_one},
    };
    bool all = true;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && o.ok;
        std::printf("criterion %d: %s - %s (%.2fs)%s%s\n", c.id, o.ok ? "PASS" : "FAIL", c.name, secs,
                    o.detail.empty() ? "" : "; ", o.detail.c_str());
    }
    return all ? 0 : 1;
}
