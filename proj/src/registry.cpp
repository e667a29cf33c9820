#include "ccsl/registry.hpp"

#include "ccsl/config.hpp"
#include "ccsl/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string_view>
#include <utility>

namespace ccsl {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& bundled_assets();
}

namespace {

const std::vector<std::string> kPreferredOrder{
    "auriga", "ligo", "lisa-pathfinder", "cantilever", "xray", "bulk-heating", "cold-atom"};

const std::string_view* find_asset(const std::string& id) {
    for (const auto& [name, text] : detail::bundled_assets())
        if (name == id)
            return &text;
    return nullptr;
}

} // namespace

std::vector<std::string> list_bundled() {
    std::vector<std::string> out;
    for (const auto& id : kPreferredOrder)
        if (find_asset(id))
            out.push_back(id);
    std::vector<std::string> rest;
    for (const auto& [name, text] : detail::bundled_assets()) {
        std::string id(name);
        if (std::find(kPreferredOrder.begin(), kPreferredOrder.end(), id) == kPreferredOrder.end())
            rest.push_back(std::move(id));
    }
    std::sort(rest.begin(), rest.end());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

ExperimentDescriptor load_bundled(const std::string& id) {
    const std::string_view* text = find_asset(id);
    if (!text)
        throw Error(ErrorKind::NotFound, "no bundled experiment '" + id + "'");
    return parse_descriptor(*text);
}

ExperimentDescriptor load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::NotFound, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_descriptor(buf.str());
}

ExperimentDescriptor load(const std::string& name_or_path) {
    if (find_asset(name_or_path))
        return load_bundled(name_or_path);
    return load_file(name_or_path);
}

std::vector<ExperimentDescriptor> load_all_bundled() {
    std::vector<ExperimentDescriptor> out;
    for (const auto& id : list_bundled())
        out.push_back(load_bundled(id));
    return out;
}

} // namespace ccsl
