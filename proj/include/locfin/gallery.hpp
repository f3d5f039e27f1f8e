#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "locfin/module.hpp"

namespace locfin {

/// A_n: objects 0..n-1, Hom(i,j) = k for i <= j.
std::shared_ptr<const CategoryGenerator> make_chain(long n, FieldDescriptor f = {});
/// Integers with Hom(m,n) = k for m <= n; basis elements compose to basis elements.
std::shared_ptr<const CategoryGenerator> make_zchain(FieldDescriptor f = {});
/// Objects -1, -2, ...; identities and one f: -n -> -1 for each n >= 2, no other composites.
std::shared_ptr<const CategoryGenerator> make_zneg(FieldDescriptor f = {});
/// Integers with identity morphisms only.
std::shared_ptr<const CategoryGenerator> make_discrete(FieldDescriptor f = {});
/// Two objects, every Hom space one-dimensional (2x2 matrix units).
std::shared_ptr<const CategoryGenerator> make_matrix2(FieldDescriptor f = {});

struct GalleryEntry {
  std::string name;
  std::string description;
  std::string default_window;
  std::function<std::shared_ptr<const Scope>(const std::string& window, FieldDescriptor f)> instantiate;
};

const std::vector<GalleryEntry>& gallery_entries();
/// Throws UnknownGallery or BadWindow. An empty window means the default.
std::shared_ptr<const Scope> gallery_instantiate(const std::string& name, const std::string& window,
                                                 FieldDescriptor f = {});

struct GalleryModuleEntry {
  std::string name;  // "<category>/<module>"
  std::string description;
  std::string parameter;  // empty if none
};

const std::vector<GalleryModuleEntry>& gallery_module_entries();
/// Spec "<category>/<module>[:param]". Throws UnknownGallery.
std::shared_ptr<const ModuleGenerator> gallery_module(const std::string& spec, FieldDescriptor f = {});
/// Restriction of a gallery module to a window of its category.
Module gallery_module_on(const std::string& spec, const std::string& window, FieldDescriptor f = {});

}  // namespace locfin
