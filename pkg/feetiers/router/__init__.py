from feetiers.router.route import feasible_split, route, route_brute_force, route_sizes

__all__ = ["feasible_split", "route", "route_brute_force", "route_sizes"]
