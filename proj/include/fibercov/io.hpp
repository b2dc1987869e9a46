/**
 * Line-oriented text formats.
 *
 *   complex  : "dim <k>" then "simplex <v0> ... <vk>" lines
 *   cochain  : "degree <k>" then "<v0> ... <vk> <value>" lines (sorted tuples; omitted = 0)
 *   bundle   : "complex <ref>" plus Euler data
 *   contact  : "name <id>", "complex <ref>" plus Euler data
 *   covering : "source <bundle>", "target <bundle>", "sheets <n>", cochain block
 *   engel    : "bundle <bundle>", "contact <label>", "tw <n>", cochain block,
 *              optional "begin oriented-witness" ... "end oriented-witness"
 *
 * Euler data is one of "euler <cochain file>", "euler zero", an inline
 * "begin cochain" ... "end cochain" block, or canonical coordinates given by
 * "free <f1> ..." and "torsion <t1> ..." lines. Lines starting with '#' are
 * comments. Relative references resolve against the referring file's directory;
 * "builtin:t3", "builtin:rp3" and "builtin:circle" name the built-in complexes.
 */
#ifndef FIBERCOV_IO_HPP
#define FIBERCOV_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "fibercov/engel.hpp"

namespace fibercov::io {

struct LoadedCovering
{
    FiberwiseCovering covering;
    std::string source_ref;
    std::string target_ref;
};

struct LoadedEngel
{
    EngelClass engel;
    std::string bundle_ref;
    std::string contact_ref;
};

/// Normalized reference: built-in names unchanged, paths made absolute and canonical.
std::string canonical_ref(const std::string& ref, const std::filesystem::path& base_dir = {});

ComplexPtr parse_complex(std::istream& in, const std::string& source_name);
void write_complex(std::ostream& out, const SimplicialComplex& X);

/// Parses cochain lines against X; `expected_degree` < 0 accepts any.
Cochain parse_cochain(std::istream& in, const ComplexPtr& X, const std::string& source_name,
                      int expected_degree = -1, std::size_t first_line = 1);
void write_cochain(std::ostream& out, const Cochain& z);

void write_covering(std::ostream& out, const FiberwiseCovering& phi, const std::string& source_ref,
                    const std::string& target_ref);
void write_engel(std::ostream& out, const EngelClass& D, const std::string& bundle_ref,
                 const std::string& contact_ref);

/**
 * Loads files and caches everything by canonical reference, so that two
 * files naming the same complex or bundle share one object.
 */
class Loader
{
public:
    ComplexPtr complex(const std::string& ref, const std::filesystem::path& base_dir = {});
    Cochain cochain(const std::string& path, const ComplexPtr& X, int expected_degree = -1);
    CircleBundle bundle(const std::string& path);
    ContactLabel contact(const std::string& path);
    LoadedCovering covering(const std::string& path);
    LoadedEngel engel(const std::string& path);

private:
    std::map<std::string, ComplexPtr> complexes_;
    std::map<std::string, CircleBundle> bundles_;
    std::map<std::string, ContactLabel> contacts_;
};

} // namespace fibercov::io

#endif
