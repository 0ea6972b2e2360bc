# Mapping Class Group Certifier
