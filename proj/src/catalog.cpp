#include "rsym/catalog.hpp"

#include <string>

namespace rsym {

FreeProductSpec c2_cm_spec(int m) {
    FreeProductSpec s;
    s.factors.push_back(cyclic_factor(2, {"x"}));
    s.factors.push_back(cyclic_factor(m, {"y"}));
    return s;
}

FreeProductSpec free_group_spec(int rank) {
    static const char* lower = "abcdefghijklmnopqrstuvw";
    FreeProductSpec s;
    for (int i = 0; i < rank; ++i) {
        if (rank <= 23) {
            s.free.push_back({std::string(1, lower[i]), std::string(1, static_cast<char>(lower[i] - 'a' + 'A')), false});
        } else {
            s.free.push_back({"g" + std::to_string(i + 1), "G" + std::to_string(i + 1), false});
        }
    }
    return s;
}

namespace {

Word repeat(const Word& w, int k) {
    Word out;
    for (int i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
}

} // namespace

PreprocessResult triangle_group(int m, int n) {
    FreeProductSpec s = c2_cm_spec(m);
    PregroupTable t = construct_pregroup(s);
    Elem x = *t.find("x"), y = *t.find("y");
    return preprocess(s, {repeat({x, y}, n)});
}

PreprocessResult two_three_group(int m, int n) {
    FreeProductSpec s = c2_cm_spec(3);
    PregroupTable t = construct_pregroup(s);
    Elem x = *t.find("x"), y = *t.find("y"), Y = *t.find("Y");
    return preprocess(s, {repeat({x, y}, m), repeat({x, y, x, Y}, n)});
}

} // namespace rsym
