#include "support/corpus_gen.hpp"

#include <random>
#include <string>

namespace carve::testing {

namespace {

class Gen {
public:
    explicit Gen(const GenOptions& opts) : opts_(opts), rng_(opts.seed) {}

    Corpus run() {
        make_features();
        if (opts_.allow_file_mapping && chance(0.25)) {
            push("///[" + pick_feature() + "]!");
        }
        push("static long effect = 0;");
        push("");
        int k = 0;
        while (more_functions(k)) {
            if (chance(0.2)) emit_struct();
            emit_function(k);
            ++k;
        }
        Corpus out;
        out.features = features_;
        out.hierarchy = hierarchy_;
        out.payloads = payloads_;
        for (const auto& l : lines_) {
            out.text += l;
            out.text += '\n';
        }
        return out;
    }

private:
    bool more_functions(int k) const {
        if (opts_.target_lines > 0) return static_cast<int>(lines_.size()) < opts_.target_lines;
        return k < opts_.functions;
    }

    int rand_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    bool chance(double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p;
    }

    void push(std::string line) { lines_.push_back(std::move(line)); }

    void make_features() {
        for (int i = 1; i <= opts_.features; ++i) {
            std::string name = "F_" + std::to_string(i);
            std::string parent;
            if (i > 1 && chance(0.4)) parent = features_[static_cast<size_t>(rand_int(0, i - 2))];
            hierarchy_.add(name, parent);
            features_.push_back(name);
        }
    }

    const std::string& pick_feature() {
        return features_[static_cast<size_t>(rand_int(0, static_cast<int>(features_.size()) - 1))];
    }

    std::string mapping(const char* op = "") {
        std::string m = "///[" + pick_feature() + "]";
        if (chance(0.3)) m += "[" + pick_feature() + "]";
        m += op;
        return m;
    }

    std::string payload_stmt() {
        std::string stmt = "effect = effect * 31 + " + std::to_string(next_uid_++) + ";";
        payloads_.push_back(stmt);
        return stmt;
    }

    std::string replacement_stmt() {
        return "effect = effect * 31 + " + std::to_string(repl_uid_++) + ";";
    }

    void emit_struct() {
        if (chance(opts_.mapped_fraction)) push(mapping());
        int u = next_uid_++;
        push("struct s_" + std::to_string(u) + " {");
        push("    int a;");
        push("    long b;");
        push("};");
        push("");
    }

    void emit_function(int k) {
        if (chance(opts_.mapped_fraction * 0.3)) push(mapping());
        push("void fn_" + std::to_string(k) + "(int selector) {");
        push("    (void)selector;");
        int blocks = rand_int(3, 8);
        for (int b = 0; b < blocks; ++b) emit_block();
        push("}");
        push("");
    }

    void emit_block() {
        int w = rand_int(1, 100);
        if (w <= 32) {
            push("    " + payload_stmt());
        } else if (w <= 48) {
            if (chance(opts_.mapped_fraction)) push("    " + mapping());
            push("    " + payload_stmt());
        } else if (w <= 64) {
            emit_if_chain();
        } else if (w <= 78) {
            emit_switch();
        } else if (w <= 90) {
            emit_segment();
        } else {
            emit_loop();
        }
    }

    void emit_branch_body(bool braced) {
        if (braced) {
            lines_.back() += " {";
            push("        " + payload_stmt());
            push("    }");
        } else {
            push("        " + payload_stmt());
        }
    }

    void emit_if_chain() {
        int elifs = rand_int(0, 2);
        bool has_else = chance(0.6);
        if (chance(opts_.mapped_fraction)) push("    " + mapping());
        push("    if (selector == " + std::to_string(next_uid_++) + ")");
        emit_branch_body(chance(0.8));
        for (int e = 0; e < elifs; ++e) {
            if (chance(opts_.mapped_fraction)) push("    " + mapping());
            push("    else if (selector == " + std::to_string(next_uid_++) + ")");
            emit_branch_body(chance(0.8));
        }
        if (has_else) {
            if (chance(opts_.mapped_fraction)) push("    " + mapping());
            push("    else");
            emit_branch_body(true);
        }
    }

    void emit_switch() {
        if (chance(opts_.mapped_fraction * 0.3)) push("    " + mapping());
        push("    switch (selector) {");
        int ncases = rand_int(1, 4);
        for (int c = 0; c < ncases; ++c) {
            if (chance(opts_.mapped_fraction)) push("        " + mapping());
            push("        case " + std::to_string(next_uid_++) + ":");
            int stmts = rand_int(1, 2);
            for (int s = 0; s < stmts; ++s) push("            " + payload_stmt());
            if (chance(0.75)) push("            break;");
        }
        if (chance(0.7)) {
            if (chance(opts_.mapped_fraction * 0.5)) push("        " + mapping());
            push("        default:");
            push("            " + payload_stmt());
            if (chance(0.7)) push("            break;");
        }
        push("    }");
    }

    void emit_segment() {
        push("    " + mapping("~"));
        if (chance(0.4)) {
            push("    ///^");
            int n = rand_int(1, 2);
            for (int r = 0; r < n; ++r) push("    ///    " + replacement_stmt());
            push("    ///^");
        }
        int body = rand_int(1, 3);
        for (int s = 0; s < body; ++s) {
            if (chance(opts_.mapped_fraction * 0.5)) push("    " + mapping());
            push("    " + payload_stmt());
        }
        push("    ///~");
    }

    void emit_loop() {
        if (chance(opts_.mapped_fraction)) push("    " + mapping());
        int u = next_uid_++;
        std::string v = "i_" + std::to_string(u);
        push("    for (int " + v + " = 0; " + v + " < 3; " + v + "++) {");
        push("        " + payload_stmt());
        push("    }");
    }

    const GenOptions& opts_;
    std::mt19937 rng_;
    int next_uid_ = 1;
    int repl_uid_ = 1000001;
    std::vector<std::string> lines_;
    std::vector<std::string> features_;
    carve::model::FeatureHierarchy hierarchy_;
    std::vector<std::string> payloads_;
};

}  // namespace

Corpus generate_corpus(const GenOptions& opts) {
    return Gen(opts).run();
}

SwitchCorpus generate_switch_corpus(unsigned seed) {
    std::mt19937 rng(seed);
    auto rand_int = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    auto chance = [&](double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    };

    SwitchCorpus out;
    int nfeat = rand_int(2, 5);
    for (int i = 1; i <= nfeat; ++i) {
        std::string name = "F_" + std::to_string(i);
        out.hierarchy.add(name);
        out.features.push_back(name);
    }

    std::vector<std::string> lines;
    lines.push_back("switch (selector) {");
    int ncases = rand_int(2, 6);
    long value = 1;
    int payload = 1;
    for (int c = 0; c < ncases; ++c) {
        if (chance(0.65)) {
            const std::string& f =
                out.features[static_cast<size_t>(rand_int(0, nfeat - 1))];
            lines.push_back("///[" + f + "]");
            out.mapped_case_feature[value] = f;
        }
        lines.push_back("case " + std::to_string(value) + ":");
        int stmts = rand_int(1, 2);
        for (int s = 0; s < stmts; ++s) {
            lines.push_back("    effect = effect * 31 + " + std::to_string(payload++) + ";");
        }
        if (chance(0.7)) lines.push_back("    break;");
        out.case_values.push_back(value);
        value += rand_int(1, 3);
    }
    if (chance(0.75)) {
        out.has_default = true;
        lines.push_back("default:");
        lines.push_back("    effect = effect * 31 + " + std::to_string(payload++) + ";");
        if (chance(0.5)) lines.push_back("    break;");
    }
    lines.push_back("}");

    for (const auto& l : lines) {
        out.text += l;
        out.text += '\n';
    }
    return out;
}

}  // namespace carve::testing
