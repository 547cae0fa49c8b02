// sns — command-line front end: validate, run, classify, encode, and
// export networks written in the .sns text format.
//
// Exit codes: 0 success, 1 parse/validation failure, 2 I/O failure,
// 3 step budget exhausted (final state still printed).

#include "sns/classic.hpp"
#include "sns/dsl.hpp"
#include "sns/engine.hpp"
#include "sns/topology.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::ordered_json;

int load_network(const std::string& path, sns::Cao& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        std::cerr << "error: cannot read " << path << "\n";
        return 2;
    }
    sns::ParseResult result = sns::parse(buffer.str());
    if (!result.ok()) {
        for (const auto& e : result.errors) {
            std::cerr << path << ":" << e.span.line << ":" << e.span.column << ": error: "
                      << e.message;
            if (!e.expected.empty()) std::cerr << " (expected " << e.expected << ")";
            std::cerr << "\n";
        }
        return 1;
    }
    out = *std::move(result.cao);
    return 0;
}

bool parse_scheduler(const std::string& text, sns::Scheduler& out) {
    if (text == "sync") {
        out = sns::Scheduler::synchronous();
        return true;
    }
    if (text == "seq") {
        out = sns::Scheduler::sequential_declared();
        return true;
    }
    if (text.rfind("perm:", 0) == 0) {
        try {
            out = sns::Scheduler::sequential_permuted(std::stoull(text.substr(5)));
            return true;
        } catch (const std::exception&) {
            return false;
        }
    }
    return false;
}

std::string kind_text(const sns::OperatorKind& kind) {
    switch (kind.tag) {
        case sns::KindTag::RadixMultiplicity: return "#";
        case sns::KindTag::RadixExcessValue: return "delta";
        case sns::KindTag::RadixExcessFact: return "fact";
        case sns::KindTag::ArbitraryFunction: return "fn " + kind.hook_name;
    }
    return "?";
}

ordered_json trace_document(const sns::Cao& cao, const sns::Scheduler& scheduler,
                            const sns::RunResult& result) {
    ordered_json doc;
    doc["cao"] = cao.name;
    doc["scheduler"] = scheduler.label();
    doc["status"] =
        result.status == sns::RunStatus::Terminated ? "terminated" : "budget-exhausted";
    doc["length"] = result.length;
    ordered_json steps = ordered_json::array();
    for (const auto& record : result.trace) {
        ordered_json fired = ordered_json::array();
        for (const auto& effect : record.fired) {
            ordered_json entry;
            entry["op_id"] = effect.op_id;
            auto strings = [](const auto& list) {
                ordered_json arr = ordered_json::array();
                for (const auto& value : list) arr.push_back(value.str());
                return arr;
            };
            entry["partial_carries"] = strings(effect.partial_carries);
            entry["common_carry"] = effect.common_carry.str();
            entry["remainders"] = strings(effect.new_operand_values);
            entry["transformants"] = strings(effect.transformants);
            fired.push_back(std::move(entry));
        }
        ordered_json after;
        for (std::size_t i = 0; i < cao.entities.size(); ++i)
            after[cao.entities[i].name.str()] = record.cardinals_after[i].str();
        ordered_json step;
        step["tau"] = record.step_index;
        step["fired"] = std::move(fired);
        step["cardinals_after"] = std::move(after);
        steps.push_back(std::move(step));
    }
    doc["steps"] = std::move(steps);
    ordered_json multicardinal = ordered_json::array();
    for (const auto& value : result.final_multicardinal.values)
        multicardinal.push_back(value.str());
    doc["final_multicardinal"] = std::move(multicardinal);
    return doc;
}

void print_final(const sns::Cao& cao, const sns::RunResult& result) {
    for (const auto& entity : cao.entities)
        std::cout << entity.name.str() << ": " << result.final.cardinals.at(entity.name) << "\n";
    std::cout << "multicardinal: [";
    for (std::size_t i = 0; i < result.final_multicardinal.values.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << result.final_multicardinal.values[i];
    }
    std::cout << "]\n";
    std::cout << "length: " << result.length << "\n";
    std::cout << "status: "
              << (result.status == sns::RunStatus::Terminated ? "terminated" : "budget-exhausted")
              << "\n";
}

int cmd_run(const std::string& path, const std::string& scheduler_text, std::size_t max_steps,
            const std::string& trace_path, bool quiet) {
    sns::Scheduler scheduler;
    if (!parse_scheduler(scheduler_text, scheduler)) {
        std::cerr << "error: invalid scheduler '" << scheduler_text
                  << "' (use sync, seq, or perm:SEED)\n";
        return 1;
    }
    sns::Cao cao;
    if (int rc = load_network(path, cao)) return rc;

    sns::RunResult result = sns::run(cao, scheduler, max_steps);
    if (!quiet) print_final(cao, result);
    if (!trace_path.empty()) {
        std::ofstream out(trace_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << trace_path << "\n";
            return 2;
        }
        out << trace_document(cao, scheduler, result).dump(2) << "\n";
        if (!out.good()) {
            std::cerr << "error: cannot write " << trace_path << "\n";
            return 2;
        }
    }
    return result.status == sns::RunStatus::BudgetExhausted ? 3 : 0;
}

int cmd_check(const std::string& path) {
    sns::Cao cao;
    return load_network(path, cao);
}

int cmd_classify(const std::string& path) {
    sns::Cao cao;
    if (int rc = load_network(path, cao)) return rc;

    sns::ClassificationRecord record = sns::classify_sns(cao);

    // Radix and rate summary: distinct values in first-appearance order.
    std::vector<sns::Cardinal> radices, rates;
    bool any_rate_nonunit = false;
    for (const auto& op : cao.operators) {
        for (const auto& operand : op.operands)
            if (std::find(radices.begin(), radices.end(), operand.radix) == radices.end())
                radices.push_back(operand.radix);
        for (const auto& image : op.images) {
            if (image.rate != 1) any_rate_nonunit = true;
            if (std::find(rates.begin(), rates.end(), image.rate) == rates.end())
                rates.push_back(image.rate);
        }
    }

    std::ostringstream summary;
    summary << to_string(record.family_influence) << ", " << to_string(record.uncertainty) << ", "
            << to_string(record.topology_shape) << ", " << to_string(record.variability) << ", "
            << to_string(record.kind_label);
    auto list = [](const std::vector<sns::Cardinal>& values) {
        std::ostringstream out;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out << ",";
            out << values[i];
        }
        return out.str();
    };
    if (!radices.empty())
        summary << "; " << (radices.size() == 1 ? "radix " : "radices ") << list(radices);
    if (any_rate_nonunit)
        summary << "; " << (rates.size() == 1 ? "rate " : "rates ") << list(rates);

    std::cout << "classification: " << summary.str() << "\n";

    // The customary feature values are bracketed; they can be omitted when
    // naming a system.
    auto feature = [](const char* label, const std::string& value, bool is_default) {
        std::cout << label << ": " << (is_default ? "[" + value + "]" : value) << "\n";
    };
    feature("family", to_string(record.family_influence),
            record.family_influence == sns::OperatorFamily::Transforming);
    feature("uncertainty", to_string(record.uncertainty), true);
    feature("topology", to_string(record.topology_shape),
            record.topology_shape == sns::TopologyShape::Linear);
    feature("variability", to_string(record.variability),
            record.variability == sns::Variability::Homogeneous);
    feature("kind", to_string(record.kind_label),
            record.kind_label == sns::KindLabel::RadixMultiplicity);

    std::cout << "roles:\n";
    auto roles = sns::classify_entities(cao);
    for (const auto& entity : cao.entities)
        std::cout << "  " << entity.name.str() << ": " << to_string(roles.at(entity.name)) << "\n";
    return 0;
}

int cmd_encode(const std::string& value_text, std::vector<std::string> radix_texts,
               std::vector<std::string> rate_texts, std::size_t width) {
    sns::Cardinal value;
    std::vector<sns::Cardinal> radices, rates;
    try {
        value = sns::Cardinal(value_text);
        for (const auto& t : radix_texts) radices.emplace_back(t);
        for (const auto& t : rate_texts) rates.emplace_back(t);
    } catch (const std::exception&) {
        std::cerr << "error: values must be decimal naturals\n";
        return 1;
    }
    if (value < 0 || radices.empty()) {
        std::cerr << "error: need a non-negative value and at least one radix\n";
        return 1;
    }

    if (width == 0) width = radices.size() + 1;
    if (radices.size() == 1 && width > 2) radices.assign(width - 1, radices[0]);
    if (rates.size() == 1 && width > 2) rates.assign(width - 1, rates[0]);
    if (rates.empty()) rates.assign(radices.size(), sns::Cardinal(1));
    if (radices.size() != width - 1 || rates.size() != radices.size()) {
        std::cerr << "error: inconsistent list lengths (need width-1 radices and matching rates)\n";
        return 1;
    }

    sns::ChainSpec spec;
    spec.width = width;
    spec.radices = std::move(radices);
    spec.rates = std::move(rates);
    try {
        std::vector<sns::Cardinal> digits = sns::encode(value, spec);
        std::cout << "digits: ";
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (i) std::cout << ",";
            std::cout << digits[i];
        }
        std::cout << "\n";
        sns::Rational decoded = sns::decode(digits, spec);
        std::cout << "decode: ";
        if (boost::multiprecision::denominator(decoded) == 1)
            std::cout << boost::multiprecision::numerator(decoded);
        else
            std::cout << decoded;
        std::cout << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int cmd_dot(const std::string& path, const std::string& out_path) {
    sns::Cao cao;
    if (int rc = load_network(path, cao)) return rc;

    std::ostringstream dot;
    dot << "digraph \"" << cao.name << "\" {\n";
    dot << "  rankdir=LR;\n";
    for (const auto& entity : cao.entities)
        dot << "  \"" << entity.name.str() << "\" [shape=ellipse, label=\"" << entity.name.str()
            << ":" << entity.cardinal << "\"];\n";
    for (const auto& op : cao.operators) {
        const char* form = op.form == sns::OperatorForm::L   ? "L"
                           : op.form == sns::OperatorForm::D ? "D"
                           : op.form == sns::OperatorForm::F ? "F"
                                                             : "M";
        dot << "  \"op:" << op.op_id << "\" [shape=box, label=\"" << form << " "
            << kind_text(op.kind) << "\"];\n";
        for (const auto& operand : op.operands)
            dot << "  \"" << operand.entity.str() << "\" -> \"op:" << op.op_id << "\" [label=\"/"
                << operand.radix << "\"];\n";
        for (const auto& image : op.images)
            dot << "  \"op:" << op.op_id << "\" -> \"" << image.entity.str() << "\" [label=\"*"
                << image.rate << "\"];\n";
    }
    dot << "}\n";

    if (out_path.empty()) {
        std::cout << dot.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 2;
        }
        out << dot.str();
        if (!out.good()) return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semantic numeration network toolkit"};
    app.require_subcommand(1);

    std::string path, scheduler_text = "sync", trace_path, out_path, value_text;
    std::size_t max_steps = sns::kDefaultMaxSteps, width = 0;
    std::vector<std::string> radix_texts, rate_texts;
    bool quiet = false;

    CLI::App* check = app.add_subcommand("check", "validate a .sns file");
    check->add_option("file", path, "network file")->required();

    CLI::App* run_cmd = app.add_subcommand("run", "run a network to fixpoint");
    run_cmd->add_option("file", path, "network file")->required();
    run_cmd->add_option("--scheduler", scheduler_text, "sync | seq | perm:SEED");
    run_cmd->add_option("--max-steps", max_steps, "step budget");
    run_cmd->add_option("--trace", trace_path, "write a JSON trace here");
    run_cmd->add_flag("--quiet", quiet, "suppress stdout");

    CLI::App* classify = app.add_subcommand("classify", "print classification and entity roles");
    classify->add_option("file", path, "network file")->required();

    CLI::App* encode_cmd = app.add_subcommand("encode", "encode a value on a generated chain");
    encode_cmd->add_option("--value", value_text, "non-negative value")->required();
    encode_cmd->add_option("--radices", radix_texts, "comma-separated radices")
        ->required()
        ->delimiter(',');
    encode_cmd->add_option("--rates", rate_texts, "comma-separated conversion rates")
        ->delimiter(',');
    encode_cmd->add_option("--width", width, "chain width (defaults to radices + 1)");

    CLI::App* dot = app.add_subcommand("dot", "emit a Graphviz drawing");
    dot->add_option("file", path, "network file")->required();
    dot->add_option("--out", out_path, "output file (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (check->parsed()) return cmd_check(path);
    if (run_cmd->parsed()) return cmd_run(path, scheduler_text, max_steps, trace_path, quiet);
    if (classify->parsed()) return cmd_classify(path);
    if (encode_cmd->parsed()) return cmd_encode(value_text, radix_texts, rate_texts, width);
    if (dot->parsed()) return cmd_dot(path, out_path);
    return 1;
}
