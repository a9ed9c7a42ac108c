#include "hurwitz/group.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hurwitz/errors.hpp"

namespace hurwitz {

namespace {

Permutation compose(const Permutation& a, const Permutation& b)
{
    Permutation r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = b[a[i]];
    return r;
}

Permutation padded(const Permutation& p, std::size_t degree)
{
    Permutation r = p;
    for (std::size_t i = p.size(); i < degree; ++i)
        r.push_back(static_cast<std::uint32_t>(i));
    return r;
}

void require_permutation(const Permutation& p)
{
    std::vector<char> hit(p.size(), 0);
    for (auto x : p) {
        if (x >= p.size() || hit[x])
            throw ValidationError("generator is not a permutation");
        hit[x] = 1;
    }
}

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s)
{
    for (auto& ch : s)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

std::vector<std::uint64_t> parse_int_list(std::string_view text, std::string_view seps)
{
    std::vector<std::uint64_t> out;
    std::string cur;
    auto flush = [&] {
        auto t = trim(cur);
        cur.clear();
        if (t.empty())
            return;
        for (char ch : t)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw ValidationError("expected an integer, got '" + t + "'");
        out.push_back(std::stoull(t));
    };
    for (char ch : text) {
        if (seps.find(ch) != std::string_view::npos)
            flush();
        else
            cur.push_back(ch);
    }
    flush();
    return out;
}

GroupSpec cyclic_spec(std::size_t n)
{
    if (n == 0)
        throw ValidationError("cyclic(0) is not a group");
    GroupSpec spec;
    spec.degree = n;
    spec.label = "cyclic(" + std::to_string(n) + ")";
    if (n > 1) {
        Permutation p(n);
        for (std::size_t i = 0; i < n; ++i)
            p[i] = static_cast<std::uint32_t>((i + 1) % n);
        spec.generators.push_back(p);
    }
    return spec;
}

// A x| Z/2 acting on the points of A, with A = (+) Z/orders[i] given in
// mixed radix and the Z/2 factor acting by x -> -x.
GroupSpec dihedral_spec(const std::vector<std::uint64_t>& orders, std::string label)
{
    std::size_t n = 1;
    for (auto o : orders) {
        if (o == 0)
            throw ValidationError("cyclic factor of order 0");
        n *= o;
        if (n > kDefaultGroupCap)
            throw BudgetError("abelian group too large for dihedral()");
    }
    auto digits = [&](std::size_t x) {
        std::vector<std::uint64_t> d(orders.size());
        for (std::size_t i = orders.size(); i-- > 0;) {
            d[i] = x % orders[i];
            x /= orders[i];
        }
        return d;
    };
    auto encode = [&](const std::vector<std::uint64_t>& d) {
        std::size_t x = 0;
        for (std::size_t i = 0; i < orders.size(); ++i)
            x = x * orders[i] + d[i];
        return x;
    };
    GroupSpec spec;
    spec.degree = n;
    spec.label = std::move(label);
    for (std::size_t j = 0; j < orders.size(); ++j) {
        if (orders[j] == 1)
            continue;
        Permutation t(n);
        for (std::size_t x = 0; x < n; ++x) {
            auto d = digits(x);
            d[j] = (d[j] + 1) % orders[j];
            t[x] = static_cast<std::uint32_t>(encode(d));
        }
        spec.generators.push_back(t);
    }
    Permutation neg(n);
    for (std::size_t x = 0; x < n; ++x) {
        auto d = digits(x);
        for (std::size_t i = 0; i < d.size(); ++i)
            d[i] = (orders[i] - d[i]) % orders[i];
        neg[x] = static_cast<std::uint32_t>(encode(d));
    }
    spec.generators.push_back(neg);
    return spec;
}

}  // namespace

// ---------------------------------------------------------------------------

Elem Group::pow(Elem g, std::uint64_t k) const
{
    Elem result = identity();
    Elem base = g;
    while (k) {
        if (k & 1)
            result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

std::optional<Elem> Group::find(const Permutation& p) const
{
    if (p.size() > degree_) {
        for (std::size_t i = degree_; i < p.size(); ++i)
            if (p[i] != i)
                return std::nullopt;
    }
    Permutation q(p.begin(), p.begin() + std::min(p.size(), degree_));
    q = padded(q, degree_);
    for (std::size_t i = 0; i < perms_.size(); ++i)
        if (perms_[i] == q)
            return static_cast<Elem>(i);
    return std::nullopt;
}

std::string Group::cycle_string(Elem a) const { return format_cycles(perms_[a]); }

Group build_group(const std::vector<Permutation>& generators, std::size_t degree, std::size_t cap)
{
    if (cap == 0 || cap > 65535)
        throw ValidationError("group size cap must lie in [1, 65535]");
    std::size_t deg = degree;
    for (const auto& g : generators)
        deg = std::max(deg, g.size());
    std::vector<Permutation> gens;
    for (const auto& g : generators) {
        gens.push_back(padded(g, deg));
        require_permutation(gens.back());
    }

    Group G;
    G.degree_ = deg;
    Permutation id(deg);
    std::iota(id.begin(), id.end(), 0u);

    std::map<Permutation, Elem> index;
    index.emplace(id, 0);
    G.perms_.push_back(id);
    std::vector<Elem> parent{0};
    std::vector<std::uint32_t> parent_gen{0};

    std::vector<Elem> layer{0};
    while (!layer.empty()) {
        std::map<Permutation, std::pair<Elem, std::uint32_t>> fresh;
        for (Elem e : layer)
            for (std::uint32_t gi = 0; gi < gens.size(); ++gi) {
                auto p = compose(G.perms_[e], gens[gi]);
                if (!index.count(p))
                    fresh.emplace(std::move(p), std::make_pair(e, gi));
            }
        layer.clear();
        for (auto& [p, par] : fresh) {
            if (G.perms_.size() >= cap)
                throw BudgetError("group closure exceeds the size cap of " + std::to_string(cap));
            auto idx = static_cast<Elem>(G.perms_.size());
            index.emplace(p, idx);
            G.perms_.push_back(p);
            parent.push_back(par.first);
            parent_gen.push_back(par.second);
            layer.push_back(idx);
        }
    }

    const std::size_t n = G.perms_.size();
    std::vector<Elem> right(n * std::max<std::size_t>(gens.size(), 1));
    for (std::size_t e = 0; e < n; ++e)
        for (std::size_t gi = 0; gi < gens.size(); ++gi)
            right[e * gens.size() + gi] = index.at(compose(G.perms_[e], gens[gi]));

    G.table_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        auto* row = &G.table_[a * n];
        row[0] = static_cast<std::uint16_t>(a);
        for (std::size_t b = 1; b < n; ++b)
            row[b] = static_cast<std::uint16_t>(right[row[parent[b]] * gens.size() + parent_gen[b]]);
    }

    G.inv_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        Permutation q(deg);
        for (std::size_t i = 0; i < deg; ++i)
            q[G.perms_[a][i]] = static_cast<std::uint32_t>(i);
        G.inv_[a] = index.at(q);
    }
    G.order_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::uint32_t k = 1;
        Elem x = static_cast<Elem>(a);
        while (x != 0) {
            x = G.mul(x, static_cast<Elem>(a));
            ++k;
        }
        G.order_[a] = k;
    }
    for (const auto& g : gens)
        G.generators_.push_back(index.at(g));
    return G;
}

// ---------------------------------------------------------------------------

bool ConjClass::contains(Elem g) const
{
    return std::binary_search(members.begin(), members.end(), g);
}

int ConjClass::local_index(Elem g) const
{
    auto it = std::lower_bound(members.begin(), members.end(), g);
    if (it == members.end() || *it != g)
        return -1;
    return static_cast<int>(it - members.begin());
}

ConjClass conjugacy_class(const Group& group, Elem element)
{
    if (element >= group.size())
        throw ValidationError("element index out of range");
    std::vector<char> hit(group.size(), 0);
    ConjClass c;
    for (Elem h = 0; h < group.size(); ++h) {
        Elem x = group.conj(element, h);
        if (!hit[x]) {
            hit[x] = 1;
            c.members.push_back(x);
        }
    }
    std::sort(c.members.begin(), c.members.end());
    c.class_order = group.order_of(element);
    return c;
}

std::vector<ConjClass> conjugacy_classes(const Group& group)
{
    std::vector<char> done(group.size(), 0);
    std::vector<ConjClass> out;
    for (Elem g = 0; g < group.size(); ++g) {
        if (done[g])
            continue;
        out.push_back(conjugacy_class(group, g));
        for (Elem x : out.back().members)
            done[x] = 1;
    }
    return out;
}

std::vector<Elem> generated_subgroup(const Group& group, std::span<const Elem> generators)
{
    std::vector<char> seen(group.size(), 0);
    std::vector<Elem> out{group.identity()};
    seen[group.identity()] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (Elem g : generators) {
            Elem x = group.mul(out[i], g);
            if (!seen[x]) {
                seen[x] = 1;
                out.push_back(x);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

int SubgroupList::index_of(const std::vector<Elem>& sorted_elements) const
{
    auto less = [](const std::vector<Elem>& a, const std::vector<Elem>& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    };
    auto it = std::lower_bound(subgroups.begin(), subgroups.end(), sorted_elements, less);
    if (it == subgroups.end() || *it != sorted_elements)
        return -1;
    return static_cast<int>(it - subgroups.begin());
}

SubgroupList subgroups(const Group& group, std::size_t cap)
{
    if (group.size() > cap)
        throw BudgetError("subgroup enumeration capped at order " + std::to_string(cap));

    struct Entry {
        std::vector<Elem> elements;
        std::vector<Elem> gens;
    };
    std::set<std::vector<Elem>> seen;
    std::vector<Entry> all;
    std::vector<Elem> cyclic_gens;

    for (Elem g = 0; g < group.size(); ++g) {
        Elem one[1] = {g};
        auto h = generated_subgroup(group, one);
        if (seen.insert(h).second) {
            all.push_back({std::move(h), {g}});
            cyclic_gens.push_back(g);
        }
    }

    std::vector<std::size_t> frontier(all.size());
    std::iota(frontier.begin(), frontier.end(), 0);
    while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t hi : frontier) {
            for (Elem c : cyclic_gens) {
                const auto& he = all[hi].elements;
                if (std::binary_search(he.begin(), he.end(), c))
                    continue;
                auto gens = all[hi].gens;
                gens.push_back(c);
                auto j = generated_subgroup(group, gens);
                if (seen.insert(j).second) {
                    all.push_back({std::move(j), std::move(gens)});
                    next.push_back(all.size() - 1);
                }
            }
        }
        frontier = std::move(next);
    }

    SubgroupList out;
    for (auto& e : all)
        out.subgroups.push_back(std::move(e.elements));
    std::sort(out.subgroups.begin(), out.subgroups.end(),
              [](const auto& a, const auto& b) {
                  if (a.size() != b.size())
                      return a.size() < b.size();
                  return a < b;
              });
    return out;
}

// ---------------------------------------------------------------------------

std::string NonsplittingWitness::describe(const Group& group) const
{
    std::ostringstream os;
    if (kind == Kind::not_generating) {
        os << "class generates a proper subgroup of order " << subgroup.size();
    } else {
        os << "class splits in a subgroup of order " << subgroup.size() << ": "
           << group.cycle_string(representatives.at(0)) << " and "
           << group.cycle_string(representatives.at(1)) << " are not conjugate there";
    }
    return os.str();
}

NonsplittingResult is_nonsplitting(const Group& group, const ConjClass& cls,
                                   const SubgroupList& subs)
{
    NonsplittingResult r;
    auto gen = generated_subgroup(group, cls.members);
    if (gen.size() != group.size()) {
        NonsplittingWitness w;
        w.kind = NonsplittingWitness::Kind::not_generating;
        w.subgroup = std::move(gen);
        r.witness = std::move(w);
        return r;
    }
    for (const auto& h : subs.subgroups) {
        std::vector<Elem> inter;
        std::set_intersection(h.begin(), h.end(), cls.members.begin(), cls.members.end(),
                              std::back_inserter(inter));
        if (inter.empty())
            continue;
        std::vector<char> in_class(group.size(), 0);
        std::size_t count = 0;
        for (Elem x : h) {
            Elem y = group.conj(inter.front(), x);
            if (!in_class[y]) {
                in_class[y] = 1;
                ++count;
            }
        }
        if (count != inter.size()) {
            NonsplittingWitness w;
            w.kind = NonsplittingWitness::Kind::splits_in_subgroup;
            w.subgroup = h;
            w.representatives.push_back(inter.front());
            for (Elem x : inter)
                if (!in_class[x]) {
                    w.representatives.push_back(x);
                    break;
                }
            r.witness = std::move(w);
            return r;
        }
    }
    r.holds = true;
    return r;
}

NonsplittingResult is_nonsplitting(const Group& group, const ConjClass& cls)
{
    return is_nonsplitting(group, cls, subgroups(group));
}

bool is_rational_class(const Group& group, const ConjClass& cls)
{
    for (Elem g : cls.members) {
        auto ord = group.order_of(g);
        for (std::uint32_t a = 1; a < std::max<std::uint32_t>(ord, 2); ++a) {
            if (std::gcd(a, ord) != 1)
                continue;
            if (!cls.contains(group.pow(g, a)))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

Permutation parse_cycles(std::string_view text, std::size_t degree)
{
    std::vector<std::vector<std::uint32_t>> cycles;
    std::size_t maxpt = 0;
    std::size_t i = 0;
    auto s = trim(text);
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        if (s[i] != '(')
            throw ValidationError("cycle notation must start with '(' in '" + s + "'");
        auto close = s.find(')', i);
        if (close == std::string::npos)
            throw ValidationError("unbalanced parenthesis in '" + s + "'");
        auto pts = parse_int_list(std::string_view(s).substr(i + 1, close - i - 1), " ,\t");
        std::vector<std::uint32_t> cyc;
        for (auto p : pts) {
            if (p == 0)
                throw ValidationError("points are numbered from 1");
            if (std::find(cyc.begin(), cyc.end(), p - 1) != cyc.end())
                throw ValidationError("repeated point in a cycle of '" + s + "'");
            cyc.push_back(static_cast<std::uint32_t>(p - 1));
            maxpt = std::max<std::size_t>(maxpt, p);
        }
        cycles.push_back(std::move(cyc));
        i = close + 1;
    }
    std::size_t deg = std::max(degree, maxpt);
    Permutation result(deg);
    std::iota(result.begin(), result.end(), 0u);
    for (const auto& cyc : cycles) {
        Permutation c(deg);
        std::iota(c.begin(), c.end(), 0u);
        for (std::size_t k = 0; k < cyc.size(); ++k)
            c[cyc[k]] = cyc[(k + 1) % cyc.size()];
        result = compose(result, c);
    }
    return result;
}

std::string format_cycles(const Permutation& p)
{
    std::string out;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i)
            continue;
        out += '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = 1;
            if (!first)
                out += ' ';
            out += std::to_string(j + 1);
            first = false;
            j = p[j];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

GroupSpec preset_group(std::string_view name_in)
{
    auto name = lower(trim(name_in));
    auto sym = [](std::size_t d) {
        GroupSpec s;
        s.degree = d;
        Permutation t = parse_cycles("(1 2)", d);
        Permutation c(d);
        for (std::size_t i = 0; i < d; ++i)
            c[i] = static_cast<std::uint32_t>((i + 1) % d);
        s.generators = {t, c};
        s.label = "S" + std::to_string(d);
        return s;
    };
    if (name == "s3")
        return sym(3);
    if (name == "s4")
        return sym(4);
    if (name == "s5")
        return sym(5);
    if (name == "a4") {
        GroupSpec s;
        s.degree = 4;
        s.generators = {parse_cycles("(1 2 3)", 4), parse_cycles("(2 3 4)", 4)};
        s.label = "A4";
        return s;
    }
    if (name == "d5") {
        auto s = dihedral_spec({5}, "D5");
        return s;
    }
    if (name == "z2" || name == "c2")
        return cyclic_spec(2);
    if (name == "trivial" || name == "1") {
        GroupSpec s;
        s.label = "trivial";
        return s;
    }
    auto open = name.find('(');
    auto close = name.rfind(')');
    if (open != std::string::npos && close == name.size() - 1 && close > open) {
        auto head = trim(std::string_view(name).substr(0, open));
        auto body = std::string_view(name).substr(open + 1, close - open - 1);
        if (head == "cyclic") {
            auto v = parse_int_list(body, " ");
            if (v.size() != 1)
                throw ValidationError("cyclic() takes one order");
            return cyclic_spec(v[0]);
        }
        if (head == "dihedral") {
            std::vector<std::uint64_t> orders;
            auto semi = body.find(';');
            if (semi != std::string_view::npos) {
                auto l = parse_int_list(body.substr(0, semi), " ");
                auto parts = parse_int_list(body.substr(semi + 1), " ,");
                if (l.size() != 1 || l[0] < 2)
                    throw ValidationError("dihedral(l;partition) needs a prime l");
                for (auto e : parts) {
                    std::uint64_t o = 1;
                    for (std::uint64_t k = 0; k < e; ++k)
                        o *= l[0];
                    orders.push_back(o);
                }
            } else {
                orders = parse_int_list(body, " ,x");
            }
            if (orders.empty())
                throw ValidationError("dihedral() needs at least one cyclic factor");
            return dihedral_spec(orders, "dihedral(" + std::string(body) + ")");
        }
    }
    throw ValidationError("unknown group preset '" + std::string(name_in) + "'");
}

GroupSpec parse_group_spec(std::string_view text)
{
    std::vector<std::string> lines;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(')
            ++depth;
        if (ch == ')')
            --depth;
        if (ch == '\n' || (ch == ';' && depth == 0)) {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    lines.push_back(cur);

    std::optional<GroupSpec> preset;
    std::vector<std::string> perm_texts;
    for (auto& raw : lines) {
        auto hash = raw.find('#');
        auto line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        auto lo = lower(line);
        if (lo.rfind("perm:", 0) == 0) {
            perm_texts.push_back(trim(line.substr(5)));
        } else if (lo.rfind("preset:", 0) == 0) {
            if (preset)
                throw ValidationError("more than one preset in group spec");
            preset = preset_group(line.substr(7));
        } else if (line.front() == '(') {
            perm_texts.push_back(line);
        } else {
            if (preset)
                throw ValidationError("more than one preset in group spec");
            preset = preset_group(line);
        }
    }
    if (preset && !perm_texts.empty())
        throw ValidationError("group spec mixes a preset with explicit generators");
    if (preset)
        return *preset;
    GroupSpec spec;
    std::vector<Permutation> raw;
    for (const auto& t : perm_texts) {
        raw.push_back(parse_cycles(t));
        spec.degree = std::max(spec.degree, raw.back().size());
    }
    for (auto& p : raw)
        spec.generators.push_back(padded(p, spec.degree));
    std::string label;
    for (std::size_t i = 0; i < perm_texts.size(); ++i)
        label += (i ? ";" : "") + perm_texts[i];
    spec.label = label.empty() ? "trivial" : "<" + label + ">";
    return spec;
}

Group build_group(const GroupSpec& spec, std::size_t cap)
{
    return build_group(spec.generators, spec.degree, cap);
}

GroupSpec load_group_spec(const std::string& spec_or_path)
{
    std::error_code ec;
    if (!spec_or_path.empty() && std::filesystem::is_regular_file(spec_or_path, ec)) {
        std::ifstream in(spec_or_path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_group_spec(ss.str());
    }
    return parse_group_spec(spec_or_path);
}

ConjClass resolve_class(const Group& group, const std::string& class_rep)
{
    if (trim(class_rep).empty()) {
        std::vector<ConjClass> invol;
        for (auto& c : conjugacy_classes(group))
            if (c.class_order == 2)
                invol.push_back(std::move(c));
        if (invol.size() != 1)
            throw ValidationError("no class representative given and the group has " +
                                  std::to_string(invol.size()) + " involution classes");
        return invol.front();
    }
    auto p = parse_cycles(class_rep, group.degree());
    auto e = group.find(p);
    if (!e)
        throw ValidationError("class representative " + class_rep + " is not in the group");
    return conjugacy_class(group, *e);
}

}  // namespace hurwitz
