#include "tropmod/linear_feasibility.hpp"

#include <map>

#include "tropmod/errors.hpp"

namespace tropmod {

namespace {

using System = std::vector<LinearConstraint>;

// Scales so the last nonzero coefficient among the first `vars` has absolute
// value one, then merges with any parallel constraint already present.
class SystemBuilder {
public:
    explicit SystemBuilder(int vars) : vars_(vars) {}

    // Returns false if the constraint is a constant contradiction.
    bool add(LinearConstraint c)
    {
        c.coef.resize(vars_);
        int lead = -1;
        for (int k = vars_ - 1; k >= 0; --k) {
            if (c.coef[k] != 0) {
                lead = k;
                break;
            }
        }
        if (lead < 0) {
            bool ok = c.strict ? (0 < c.rhs) : (0 <= c.rhs);
            if (!ok) infeasible_ = true;
            return ok;
        }
        Rational s = abs(c.coef[lead]);
        for (auto& x : c.coef) x /= s;
        c.rhs /= s;
        auto [it, inserted] = rows_.try_emplace(c.coef, c);
        if (!inserted) {
            auto& old = it->second;
            if (c.rhs < old.rhs || (c.rhs == old.rhs && c.strict)) old = c;
        }
        return true;
    }

    bool infeasible() const { return infeasible_; }

    System take()
    {
        System out;
        for (auto& [_, c] : rows_) out.push_back(std::move(c));
        return out;
    }

private:
    int vars_;
    bool infeasible_ = false;
    std::map<Point, LinearConstraint> rows_;
};

} // namespace

std::optional<Point> find_point(int dim, std::vector<LinearConstraint> constraints)
{
    if (dim < 0) throw InvalidInput("negative dimension");
    for (const auto& c : constraints)
        if (static_cast<int>(c.coef.size()) != dim) throw InvalidInput("constraint has wrong length");

    // stages[k] holds the system over variables 0..k-1.
    std::vector<System> stages(dim + 1);
    {
        SystemBuilder b(dim);
        for (auto& c : constraints) b.add(std::move(c));
        if (b.infeasible()) return std::nullopt;
        stages[dim] = b.take();
    }
    for (int k = dim; k > 0; --k) {
        const int var = k - 1;
        SystemBuilder b(var);
        System pos, neg;
        for (const auto& c : stages[k]) {
            if (c.coef[var] > 0)
                pos.push_back(c);
            else if (c.coef[var] < 0)
                neg.push_back(c);
            else
                b.add(c);
        }
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                LinearConstraint c;
                c.coef.resize(var);
                const Rational& cp = p.coef[var];
                Rational cn = -n.coef[var];
                for (int m = 0; m < var; ++m) c.coef[m] = p.coef[m] / cp + n.coef[m] / cn;
                c.rhs = p.rhs / cp + n.rhs / cn;
                c.strict = p.strict || n.strict;
                b.add(std::move(c));
            }
        }
        if (b.infeasible()) return std::nullopt;
        stages[var] = b.take();
    }

    Point x;
    for (int k = 1; k <= dim; ++k) {
        const int var = k - 1;
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto& c : stages[k]) {
            if (c.coef[var] == 0) continue;
            Rational s = c.rhs;
            for (int m = 0; m < var; ++m) s -= c.coef[m] * x[m];
            Rational bound = s / c.coef[var];
            if (c.coef[var] > 0) {
                if (!hi || bound < *hi || (bound == *hi && c.strict)) {
                    hi = bound;
                    hi_strict = c.strict;
                }
            } else {
                if (!lo || bound > *lo || (bound == *lo && c.strict)) {
                    lo = bound;
                    lo_strict = c.strict;
                }
            }
        }
        Rational v;
        if (lo && hi) {
            if (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict)))
                throw std::logic_error("find_point: back-substitution found an empty interval");
            v = (*lo == *hi) ? *lo : Rational((*lo + *hi) / 2);
        } else if (lo) {
            v = lo_strict ? Rational(*lo + 1) : *lo;
        } else if (hi) {
            v = hi_strict ? Rational(*hi - 1) : *hi;
        } else {
            v = 0;
        }
        x.push_back(v);
    }
    return x;
}

} // namespace tropmod
