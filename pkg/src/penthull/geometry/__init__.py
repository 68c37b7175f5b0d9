"""The pentagon-glued surface: charts, exact geodesics and metric comparisons."""
