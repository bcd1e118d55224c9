#include "archrec/prompt.hpp"

#include "archrec/errors.hpp"
#include "archrec/textutil.hpp"

namespace archrec::llm
{

std::string PromptContract::text() const
{
    std::string out;
    out += "You act as " + role + "\n";
    out += "Your goal is the following: " + goal + "\n";
    out += "Background for your judgment: " + backstory + "\n";
    out += "Mapping references you must follow: " + examples + "\n";
    out += "The admissible evidence is exactly this input:\n" + input + "\n";
    out += "Perform this task: " + task + "\n";
    out += "Your answer must satisfy this output contract: " + expected_output + "\n";
    return out;
}

std::vector<std::string> available_templates()
{
    return {"node_description", "system_architecture_constructor"};
}

namespace
{

std::string embedded_input(const extract::NodeInventory& inventory,
                           const launch::LaunchDependencyDescription& ldd)
{
    std::string out;
    out += "--- atomic_ros_nodes.json ---\n";
    if (inventory.classifier_count() == 0)
        out += "(warning: the node inventory is empty)\n";
    out += extract::emit_node_inventory(inventory);
    out += "--- launch_dependencies.json ---\n";
    if (ldd.list_launch_file.empty())
        out += "(warning: the launch dependency description is empty)\n";
    out += launch::emit_launch_dependency_json(ldd);
    return out;
}

}  // namespace

PromptContract render_prompt(const std::string& template_name,
                             const extract::NodeInventory& inventory,
                             const launch::LaunchDependencyDescription& ldd)
{
    PromptContract p;
    p.input = embedded_input(inventory, ldd);

    if (template_name == "system_architecture_constructor")
    {
        p.role = "a software architecture constructor for ROS 2 systems.";
        p.goal = "produce a composed component architecture model that places every runtime "
                 "node instance into its launch-induced subsystem.";
        p.backstory = "you only assert structure that is supported by the provided artifacts; "
                      "you never invent classifiers, instances, ports, or relations beyond "
                      "them.";
        p.examples = "launch file entries map to ComposedRosNodeClassifier blocks; node "
                     "instances map to RosNodePart blocks typed by their linked "
                     "AtomicRosNodeClassifier; resolved topic and service names map to "
                     "communication relations.";
        p.task = "align the runtime context from the launch dependency description with the "
                 "atomic node list, resolve names through namespaces and remappings, and "
                 "assemble the composed architecture model.";
        p.expected_output = "a PlantUML component diagram in the repository dialect, with one "
                            "component per subsystem and part and one connector per "
                            "communication relation.";
        return p;
    }
    if (template_name == "node_description")
    {
        p.role = "a technical writer for robotic software architecture documentation.";
        p.goal = "write one concise responsibility description per atomic node classifier.";
        p.backstory = "descriptions are free text only; they must not add, remove, or rename "
                      "any structural element of the model.";
        p.examples = "a camera driver node is described as 'Captures frames from the camera "
                     "and publishes image topics.'";
        p.task = "for every classifier id in the embedded node inventory, write one sentence "
                 "describing the node's responsibility, using its class name, ports, and "
                 "launch context as evidence.";
        p.expected_output = "a single JSON object mapping each classifier id to its "
                            "description string, with no additional keys and no surrounding "
                            "prose.";
        return p;
    }
    throw InputError("unknown prompt template '" + template_name + "'; available: " +
                     join(available_templates(), ", "));
}

}  // namespace archrec::llm
