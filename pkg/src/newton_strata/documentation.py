"""
Help texts for the newton-strata command line.
"""


def format_dict_as_text(dictionary, depth=0):
    """Format a dictionary as a text string."""
    text = ""
    for key, value in dictionary.items():
        indent = "  " * depth
        if isinstance(value, dict):
            text += f"{indent}{key}:\n{format_dict_as_text(value, depth + 1)}"
        elif isinstance(value, list):
            text += f"{indent}{key}:\n" + "\n".join(f"{indent}  - {item}" for item in value) + "\n"
        else:
            text += f"{indent}{key}: {value}\n"
    return text


def create_documentation(title, short_description, sections):
    """
    Create formatted documentation for a subcommand.

    Args:
        title: Subcommand title
        short_description: Brief description
        sections: Dict of inputs and outputs documentation sections.

    Returns:
        Formatted documentation string
    """
    text = f"{title}\n{short_description}\n\n"
    text += format_dict_as_text(sections)
    return text


GROUP_OPTIONS = {
    "group": (
        "The group, e.g. 'GL4', 'GSp4', 'U3', 'PGL3', 'SO5'. The size may also be given separately with --n."
    ),
    "n": "Size of the group when --group names only the family.",
    "mu": "The cocharacter as comma separated integers, e.g. '1,1,0,0'.",
    "w": "A Weyl group element as a comma separated word of simple reflections, 1-based (e.g. '2' is s_2).",
}

WITT_OPTIONS = {
    "matrix": "A JSON matrix file with fields p, precision, degree, modulus and entries.",
    "p": "The prime p of the Galois ring (default from NEWTON_PRIME).",
    "precision": "The precision N of W(F_q)/p^N (default from NEWTON_PRECISION).",
    "degree": "The residue degree s, q = p^s (default from NEWTON_DEGREE).",
}

OUTPUT_OPTIONS = {
    "format": "Output format: json, dot, tsv or text.",
    "cache_dir": (
        "Directory for cached outputs keyed by a content hash of the inputs. Defaults to NEWTON_CACHE_DIR; "
        "caching is off when neither is set."
    ),
    "verbose": "Log debug messages to stderr.",
    "seed": "Seed for the randomized suites of 'check'.",
}

EXIT_CODES = {
    "0": "success",
    "2": "usage error",
    "3": "consistency error",
    "4": "precision error",
    "5": "w is not in the Weyl group of the centralizer of nu",
    "6": "nu is not anti-dominant",
}

TOOLTIPS = {
    **GROUP_OPTIONS,
    **WITT_OPTIONS,
    **OUTPUT_OPTIONS,
}


def get_tooltip(option_name: str):
    """Get the help text of an option."""
    return TOOLTIPS.get(option_name, "No documentation available")


DOCUMENTATION = {
    "newton-strata": create_documentation(
        "newton-strata",
        "Newton strata, Kottwitz sets and central leaf combinatorics for reductive groups.",
        {"Exit codes": EXIT_CODES},
    ),
    "poset": create_documentation(
        "Kottwitz poset",
        "Enumerate B(G, mu) with its dominance order and Hasse diagram.",
        {
            "Inputs": {"group": GROUP_OPTIONS["group"], "mu": GROUP_OPTIONS["mu"]},
            "Outputs": "json (default), dot or text",
        },
    ),
    "dims": create_documentation(
        "Strata dimensions",
        "Tabulate defect, stratum dimension, codimension, central leaf and Rapoport-Zink dimensions over B(G, mu).",
        {
            "Inputs": {"group": GROUP_OPTIONS["group"], "mu": GROUP_OPTIONS["mu"]},
            "Outputs": "tsv (default), json or text",
        },
    ),
    "rc": create_documentation(
        "Central leaf roots",
        "Compute R_mu, R_nu, R_mu,nu and R_C for b = w sigma(mu')(p), with the orbit-wise counting report.",
        {
            "Inputs": {
                "group": GROUP_OPTIONS["group"],
                "mu": "The conjugate mu' of mu.",
                "w": GROUP_OPTIONS["w"],
            },
            "Outputs": "json (default) or text",
        },
    ),
    "slopes": create_documentation(
        "Newton slopes",
        "Newton slopes and Kottwitz point of F = A sigma over W(F_q)/p^N.",
        {
            "Inputs": {
                "matrix": WITT_OPTIONS["matrix"],
                "leaf datum": "Alternatively --group GLn --mu mu' --w word for A = w p^mu'.",
            },
            "Outputs": "text (default) or json",
        },
    ),
    "check": create_documentation(
        "Consistency suites",
        "Run the cross-module identities on enumerated and randomized data; exit 0 iff all pass.",
        {"Outputs": "json (default) or text"},
    ),
}


def get_documentation(command_name):
    """Get documentation for a subcommand."""
    return DOCUMENTATION.get(command_name, "No documentation available")
