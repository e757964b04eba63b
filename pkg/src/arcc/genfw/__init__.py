"""Generator models, registry, planning and emitters."""
