"""Точная алгебра для уравнений f(αx+β) = γf(x)+δ и полусопряжённости f∘g = h∘f."""
