#!/usr/bin/env python3
"""
Named Formation Patterns
Pattern triangles that scenario and triangle files may reference by name
"""

from typing import Dict, List, Optional, Any

# Only the shape matters: position, scale and rotation are irrelevant to the solver
PATTERN_PRESETS: Dict[str, Dict[str, Any]] = {
    "equilateral": {
        "points": [[0.0, 0.0], [1.0, 0.0], [0.5, 0.8660254037844386]],
        "angles_deg": (60, 60, 60),
        "description": "All sides equal; the formation centroid never moves",
    },
    "right_isoceles": {
        "points": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
        "angles_deg": (45, 45, 90),
        "description": "Right angle at the first vertex",
    },
    "thirty_sixty_ninety": {
        "points": [[0.0, 0.0], [1.7320508075688772, 0.0], [0.0, 1.0]],
        "angles_deg": (30, 60, 90),
        "description": "Half of an equilateral triangle",
    },
    "golden_gnomon": {
        "points": [[0.0, 0.0], [1.618033988749895, 0.0], [0.8090169943749475, 0.5877852522924731]],
        "angles_deg": (36, 36, 108),
        "description": "Obtuse isoceles triangle with base to leg ratio phi",
    },
    "sliver": {
        "points": [[0.0, 0.0], [1.0, 0.0], [0.5, 0.05]],
        "angles_deg": (5.7, 5.7, 168.6),  # approximate
        "description": "Nearly flat isoceles triangle, a hard case for the oracle grid",
    },
}


def get_pattern_preset(name: str) -> Optional[List[List[float]]]:
    """Points of a named pattern, or None if the name is unknown"""
    preset = PATTERN_PRESETS.get(name.strip().lower())
    if preset is None:
        return None
    return [list(p) for p in preset["points"]]


def list_pattern_presets() -> List[Dict[str, Any]]:
    """Name, angles and description of every preset, sorted by name"""
    return [
        {"name": name, "angles_deg": list(preset["angles_deg"]), "description": preset["description"]}
        for name, preset in sorted(PATTERN_PRESETS.items())
    ]
